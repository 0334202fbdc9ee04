#include "permtree/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "permtree/cover.hpp"
#include "permtree/errors.hpp"
#include "permtree/rng.hpp"
#include "permtree/structure.hpp"
#include "permtree/tree_codec.hpp"

namespace permtree {

std::string to_string(Statistic s) {
    switch (s) {
        case Statistic::leaves: return "leaves";
        case Statistic::diameter: return "diameter";
        case Statistic::maxdeg: return "maxdeg";
        case Statistic::degree_census: return "degree_census";
        case Statistic::gamma: return "gamma";
        case Statistic::dcov: return "dcov";
        case Statistic::runs_geometric: return "runs_geometric";
    }
    return "unknown";
}

Statistic parse_statistic(const std::string& name) {
    if (name == "leaves") return Statistic::leaves;
    if (name == "diameter" || name == "diam") return Statistic::diameter;
    if (name == "maxdeg") return Statistic::maxdeg;
    if (name == "degree_census" || name == "dcensus") return Statistic::degree_census;
    if (name == "gamma") return Statistic::gamma;
    if (name == "dcov") return Statistic::dcov;
    if (name == "runs_geometric" || name == "runs") return Statistic::runs_geometric;
    throw InvalidConfig("unknown statistic '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (samples < 1) throw InvalidConfig("samples must be >= 1");
    if (workers < 1) throw InvalidConfig("workers must be >= 1");
    const auto& t = tolerances;
    for (double v : {t.moment_z, t.cdf_abs, t.cov_abs, t.normality_max_dev, t.ratio_mean_abs, t.ratio_var_abs}) {
        if (!(v > 0)) throw InvalidConfig("tolerances must be positive");
    }
    if (!(t.chi_square_quantile > 0 && t.chi_square_quantile < 1)) throw InvalidConfig("chi_square_quantile must lie in (0, 1)");
    switch (statistic) {
        case Statistic::runs_geometric:
            if (n < 1) throw InvalidConfig("n must be >= 1");
            if (!(q > 0 && q < 1)) throw InvalidConfig("q must lie in (0, 1)");
            break;
        case Statistic::leaves:
        case Statistic::diameter:
            if (n < 2) throw InvalidConfig("n must be >= 2");
            break;
        case Statistic::maxdeg:
            if (n < 4) throw InvalidConfig("maxdeg needs n >= 4");
            if (k_min > k_max) throw InvalidConfig("k_min must not exceed k_max");
            break;
        case Statistic::gamma:
            if (n < 2) throw InvalidConfig("n must be >= 2");
            break;
        case Statistic::degree_census:
            if (m < 1) throw InvalidConfig("m must be >= 1");
            if (n < m + 4) throw InvalidConfig("degree_census needs n >= m + 4");
            break;
        case Statistic::dcov:
            if (m < 1 || m > 8) throw InvalidConfig("dcov needs 1 <= m <= 8");
            if (n < 3) throw InvalidConfig("dcov needs n >= 3");
            break;
    }
}

bool StatReport::passed() const {
    return std::all_of(tests.begin(), tests.end(), [](const TestResult& t) { return t.passed; });
}

const TestResult* StatReport::find(const std::string& name) const {
    for (const auto& t : tests) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi_square_quantile(int dof, double probability) {
    if (dof < 1) throw InvalidArgument("chi-square quantile needs dof >= 1");
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(dof), probability);
}

ChiSquare chi_square(const std::map<std::int64_t, std::int64_t>& observed, const std::map<std::int64_t, double>& expected_pmf) {
    std::int64_t total = 0;
    for (const auto& [v, c] : observed) total += c;
    if (total == 0) throw EmptyHistogram("chi_square on an empty histogram");

    std::map<std::int64_t, std::pair<std::int64_t, double>> cells;
    for (const auto& [v, c] : observed) cells[v].first += c;
    for (const auto& [v, p] : expected_pmf) cells[v].second += p * static_cast<double>(total);

    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double o = 0, e = 0;
    bool outside_support = false;
    for (const auto& [v, cell] : cells) {
        if (cell.first > 0 && cell.second <= 0) outside_support = true;
        o += static_cast<double>(cell.first);
        e += cell.second;
        if (e >= 5.0) {
            bins.emplace_back(o, e);
            o = e = 0;
        }
    }
    if (o > 0 || e > 0) {
        if (bins.empty()) {
            bins.emplace_back(o, e);
        } else {
            bins.back().first += o;
            bins.back().second += e;
        }
    }

    ChiSquare out;
    out.bins = static_cast<int>(bins.size());
    out.dof = out.bins - 1;
    for (const auto& [ob, ex] : bins) {
        if (ex <= 0) {
            if (ob > 0) out.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        out.statistic += (ob - ex) * (ob - ex) / ex;
    }
    // A value the law cannot produce is a hard failure, whatever the merging hid.
    if (outside_support) out.statistic = std::numeric_limits<double>::infinity();
    return out;
}

NormalityScore normality_check(const std::vector<double>& values, double lattice_step) {
    const auto count = values.size();
    if (count < 1000) throw TooFewSamples("normality_check needs >= 1000 values, got " + std::to_string(count));
    const double nd = static_cast<double>(count);
    double mean = 0;
    for (double v : values) mean += v;
    mean /= nd;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    if (!(m2 > 0)) throw DegenerateVariance("normality_check on values with zero variance");

    NormalityScore s;
    s.mean = mean;
    s.sd = std::sqrt(m2 * nd / (nd - 1));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;

    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double half = lattice_step / 2;
    std::size_t i = 0;
    while (i < count) {
        std::size_t j = i;
        while (j < count && sorted[j] == sorted[i]) ++j;
        const double below = static_cast<double>(i) / nd;
        const double upto = static_cast<double>(j) / nd;
        const double lo = normal_cdf((sorted[i] - half - mean) / s.sd);
        const double hi = normal_cdf((sorted[i] + half - mean) / s.sd);
        s.max_cdf_deviation = std::max({s.max_cdf_deviation, std::abs(below - lo), std::abs(upto - hi)});
        i = j;
    }
    return s;
}

namespace {

// Calls fn(i) for i in [0, count), split into contiguous chunks.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
    const auto w = static_cast<std::int64_t>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
    auto chunk = [&](std::int64_t part) {
        const std::int64_t lo = count * part / w, hi = count * (part + 1) / w;
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
    };
    if (w == 1) {
        chunk(0);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::int64_t part = 0; part < w; ++part) pool.emplace_back(chunk, part);
}

Permutation tree_sample(const ExperimentConfig& c, std::int64_t i) {
    Substream rng(c.seed, StreamTag::tree, static_cast<std::uint64_t>(i));
    return sample_tree(c.n, rng);
}

// Exact sums over integer samples; moments derived once at the end.
struct IntMoments {
    std::int64_t count = 0;
    __int128 sum = 0;
    __int128 sum_sq = 0;
    __int128 sum_cube = 0;
    __int128 sum_quad = 0;

    void add(std::int64_t x) {
        const __int128 v = x;
        ++count;
        sum += v;
        sum_sq += v * v;
        sum_cube += v * v * v;
        sum_quad += v * v * v * v;
    }
    double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
    double variance() const {
        if (count < 2) return 0.0;
        const __int128 num = static_cast<__int128>(count) * sum_sq - sum * sum;
        return static_cast<double>(num) / (static_cast<double>(count) * static_cast<double>(count - 1));
    }
    // Fourth central moment, for the standard error of the variance.
    double central4() const {
        const double nd = static_cast<double>(count), mu = mean();
        const double s1 = static_cast<double>(sum), s2 = static_cast<double>(sum_sq);
        const double s3 = static_cast<double>(sum_cube), s4 = static_cast<double>(sum_quad);
        return (s4 - 4 * mu * s3 + 6 * mu * mu * s2 - 4 * mu * mu * mu * s1) / nd + mu * mu * mu * mu;
    }
};

TestResult bounded(std::string name, double observed, double expected, double statistic, double threshold) {
    return {std::move(name), observed, expected, statistic, threshold, std::abs(statistic) <= threshold};
}

TestResult mean_z(std::string name, const IntMoments& m, double expected, double bound) {
    const double se = std::sqrt(m.variance() / static_cast<double>(m.count));
    const double diff = m.mean() - expected;
    const double z = se > 0 ? diff / se : (diff == 0 ? 0.0 : std::numeric_limits<double>::infinity());
    return bounded(std::move(name), m.mean(), expected, z, bound);
}

TestResult variance_z(std::string name, const IntMoments& m, double expected, double bound) {
    const double v = m.variance();
    const double pop = v * static_cast<double>(m.count - 1) / static_cast<double>(m.count);
    const double se = std::sqrt(std::max(0.0, m.central4() - pop * pop) / static_cast<double>(m.count));
    const double diff = v - expected;
    const double z = se > 0 ? diff / se : (std::abs(diff) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity());
    return bounded(std::move(name), v, expected, z, bound);
}

// Histogram rows, moment tests, and a chi-square test against `pmf`.
void discrete_law(StatReport& r, const std::vector<std::int64_t>& xs, const std::map<std::int64_t, double>& pmf) {
    const auto& tol = r.config.tolerances;
    IntMoments m;
    std::map<std::int64_t, std::int64_t> hist;
    for (auto x : xs) {
        m.add(x);
        ++hist[x];
    }
    r.empirical.mean = m.mean();
    r.empirical.variance = m.variance();

    double mean = 0, second = 0;
    for (const auto& [v, p] : pmf) {
        mean += static_cast<double>(v) * p;
        second += static_cast<double>(v) * static_cast<double>(v) * p;
    }
    r.theory.mean = mean;
    r.theory.variance = std::max(0.0, second - mean * mean);

    std::map<std::int64_t, std::pair<std::int64_t, double>> rows;
    for (const auto& [v, c] : hist) rows[v].first = c;
    for (const auto& [v, p] : pmf) rows[v].second = p * static_cast<double>(m.count);
    for (const auto& [v, row] : rows) r.histogram.push_back({v, row.first, row.second});

    r.tests.push_back(mean_z("mean_z", m, mean, tol.moment_z));
    r.tests.push_back(variance_z("variance_z", m, *r.theory.variance, tol.moment_z));
    const auto chi = chi_square(hist, pmf);
    if (chi.dof >= 1) {
        const double q = chi_square_quantile(chi.dof, tol.chi_square_quantile);
        TestResult t{"chi_square", chi.statistic, static_cast<double>(chi.dof), chi.statistic, q, chi.statistic <= q};
        r.tests.push_back(t);
    }
}

// Law of a statistic that is constant on the unique tree of size n <= 2.
std::map<std::int64_t, double> point_mass(std::int64_t v) { return {{v, 1.0}}; }

void run_leaves_or_diameter(StatReport& r) {
    const auto& c = r.config;
    const bool want_leaves = c.statistic == Statistic::leaves;
    std::vector<std::int64_t> xs(static_cast<std::size_t>(c.samples));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        const auto s = tree_stats(tree_sample(c, i), false);
        xs[static_cast<std::size_t>(i)] = want_leaves ? s.leaves : s.diameter;
    });
    std::map<std::int64_t, double> pmf;
    if (c.n < 3) {
        const auto s = tree_stats(decode(TreeCode(c.n)), true);
        pmf = point_mass(want_leaves ? s.leaves : s.diameter);
    } else {
        for (int v = 1; v <= c.n; ++v) {
            const double p = want_leaves ? leaves_pmf(c.n, v) : diameter_pmf(c.n, v);
            if (p > 0) pmf[v] = p;
        }
    }
    discrete_law(r, xs, pmf);
}

void run_maxdeg(StatReport& r) {
    const auto& c = r.config;
    std::vector<std::int64_t> xs(static_cast<std::size_t>(c.samples));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        xs[static_cast<std::size_t>(i)] = tree_stats(tree_sample(c, i), false).max_degree;
    });
    IntMoments m;
    std::map<std::int64_t, std::int64_t> hist;
    for (auto x : xs) {
        m.add(x);
        ++hist[x];
    }
    r.empirical.mean = m.mean();
    r.empirical.variance = m.variance();
    for (const auto& [v, count] : hist) r.histogram.push_back({v, count, 0.0});

    const int center = maxdeg_centering(c.n);
    r.theory.values.emplace_back("centering", center);
    for (int k = c.k_min; k <= c.k_max; ++k) {
        std::int64_t below = 0;
        for (const auto& [v, count] : hist) {
            if (v - center < k) below += count;
        }
        const double emp = static_cast<double>(below) / static_cast<double>(c.samples);
        const double th = maxdeg_cdf_approx(c.n, k);
        const std::string key = "cdf_k=" + std::to_string(k);
        r.empirical.values.emplace_back(key, emp);
        r.theory.values.emplace_back(key, th);
        r.tests.push_back(bounded(key, emp, th, emp - th, c.tolerances.cdf_abs));
    }
}

void run_gamma(StatReport& r) {
    const auto& c = r.config;
    std::vector<std::int64_t> xs(static_cast<std::size_t>(c.samples));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        xs[static_cast<std::size_t>(i)] = gamma_formula(tree_sample(c, i));
    });
    IntMoments m;
    std::map<std::int64_t, std::int64_t> hist;
    for (auto x : xs) {
        m.add(x);
        ++hist[x];
    }
    for (const auto& [v, count] : hist) r.histogram.push_back({v, count, 0.0});
    const double nd = c.n;
    const auto th = gamma_theory(c.n);
    r.empirical.mean = m.mean();
    r.empirical.variance = m.variance();
    r.theory.mean = th.mean;
    r.theory.variance = th.variance;
    r.empirical.values = {{"mean_over_n", m.mean() / nd}, {"variance_over_n", m.variance() / nd}};
    r.theory.values = {{"mean_over_n", th.mean / nd}, {"variance_over_n", th.variance / nd}};
    const auto& tol = c.tolerances;
    r.tests.push_back(bounded("mean_over_n", m.mean() / nd, th.mean / nd, m.mean() / nd - th.mean / nd, tol.ratio_mean_abs));
    r.tests.push_back(bounded("variance_over_n", m.variance() / nd, th.variance / nd, m.variance() / nd - th.variance / nd, tol.ratio_var_abs));
    if (c.samples >= 1000 && m.variance() > 0) {
        const std::vector<double> values(xs.begin(), xs.end());
        const auto score = normality_check(values, 1.0);
        r.empirical.values.emplace_back("skewness", score.skewness);
        r.empirical.values.emplace_back("excess_kurtosis", score.excess_kurtosis);
        r.tests.push_back(bounded("normality", score.max_cdf_deviation, 0.0, score.max_cdf_deviation, tol.normality_max_dev));
    }
}

// D_1..D_m of each sample, row-major.
std::vector<std::int64_t> degree_counts(const ExperimentConfig& c, int m) {
    std::vector<std::int64_t> out(static_cast<std::size_t>(c.samples) * static_cast<std::size_t>(m));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        const auto census = tree_stats(tree_sample(c, i), false).census;
        for (int k = 1; k <= m; ++k) out[static_cast<std::size_t>(i * m + k - 1)] = census[k];
    });
    return out;
}

Matrix covariance_over_n(const std::vector<std::int64_t>& rows, std::int64_t samples, int m, int n) {
    std::vector<__int128> sum(static_cast<std::size_t>(m), 0);
    std::vector<__int128> cross(static_cast<std::size_t>(m * m), 0);
    for (std::int64_t s = 0; s < samples; ++s) {
        const auto* row = &rows[static_cast<std::size_t>(s * m)];
        for (int a = 0; a < m; ++a) {
            sum[static_cast<std::size_t>(a)] += row[a];
            for (int b = 0; b < m; ++b) cross[static_cast<std::size_t>(a * m + b)] += static_cast<__int128>(row[a]) * row[b];
        }
    }
    Matrix cov(m);
    if (samples < 2) return cov;
    const double denom = static_cast<double>(samples) * static_cast<double>(samples - 1) * n;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const __int128 num = static_cast<__int128>(samples) * cross[static_cast<std::size_t>(a * m + b)] -
                                 sum[static_cast<std::size_t>(a)] * sum[static_cast<std::size_t>(b)];
            cov(a, b) = static_cast<double>(num) / denom;
        }
    }
    return cov;
}

void run_degree_census(StatReport& r) {
    const auto& c = r.config;
    const int m = c.m;
    // Per sample: D_1..D_m then Y*_1..Y*_m.
    std::vector<std::int64_t> xs(static_cast<std::size_t>(c.samples) * static_cast<std::size_t>(2 * m));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        Substream rng(c.seed, StreamTag::tree, static_cast<std::uint64_t>(i));
        const auto code = random_code(c.n, rng);
        const auto census = tree_stats(decode(code), false).census;
        const auto coins = coin_stats(CoinSequence::from_code(code));
        auto* row = &xs[static_cast<std::size_t>(i * 2 * m)];
        for (int k = 1; k <= m; ++k) {
            row[k - 1] = census[k];
            row[m + k - 1] = coins.ystar(k);
        }
    });
    const auto& tol = c.tolerances;
    for (int col = 0; col < 2 * m; ++col) {
        const bool is_d = col < m;
        const int k = is_d ? col + 1 : col - m + 1;
        IntMoments mom;
        for (std::int64_t s = 0; s < c.samples; ++s) mom.add(xs[static_cast<std::size_t>(s * 2 * m + col)]);
        const std::string key = (is_d ? "D" : "Ystar") + std::to_string(k);
        const double expected = is_d ? degree_count_mean(c.n, k) : y_star_moments(c.n, k).mean;
        r.empirical.values.emplace_back("mean_" + key, mom.mean());
        r.theory.values.emplace_back("mean_" + key, expected);
        r.tests.push_back(mean_z("mean_" + key + "_z", mom, expected, tol.moment_z));
    }
    if (c.samples >= 1000) {
        std::vector<double> d1(static_cast<std::size_t>(c.samples));
        for (std::int64_t s = 0; s < c.samples; ++s) d1[static_cast<std::size_t>(s)] = static_cast<double>(xs[static_cast<std::size_t>(s * 2 * m)]);
        const auto score = normality_check(d1, 1.0);
        r.empirical.values.emplace_back("D1_skewness", score.skewness);
        r.empirical.values.emplace_back("D1_excess_kurtosis", score.excess_kurtosis);
        r.tests.push_back(bounded("normality_D1", score.max_cdf_deviation, 0.0, score.max_cdf_deviation, tol.normality_max_dev));
    }
}

void run_dcov(StatReport& r) {
    const auto& c = r.config;
    const auto rows = degree_counts(c, c.m);
    const auto cov = covariance_over_n(rows, c.samples, c.m, c.n);
    const auto theory = degree_cov(c.m);
    r.empirical.covariance = cov;
    r.theory.covariance = theory;
    for (int a = 0; a < c.m; ++a) {
        for (int b = 0; b < c.m; ++b) {
            const std::string key = "cov_" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
            r.tests.push_back(bounded(key, cov(a, b), theory(a, b), cov(a, b) - theory(a, b), c.tolerances.cov_abs));
        }
    }
}

void run_runs(StatReport& r) {
    const auto& c = r.config;
    const double log_q = std::log(c.q);
    std::vector<std::int64_t> xs(static_cast<std::size_t>(c.samples));
    parallel_for(c.samples, c.workers, [&](std::int64_t i) {
        Substream rng(c.seed, StreamTag::geometric, static_cast<std::uint64_t>(i));
        std::int64_t runs = 0;
        std::int64_t prev = 0;
        for (int j = 0; j < c.n; ++j) {
            const auto v = static_cast<std::int64_t>(std::floor(std::log(rng.uniform_open_zero()) / log_q));
            if (j == 0 || v != prev) ++runs;
            prev = v;
        }
        xs[static_cast<std::size_t>(i)] = runs;
    });
    IntMoments m;
    for (auto x : xs) m.add(x);
    const auto th = geometric_runs(c.n, c.q);
    r.empirical.mean = m.mean();
    r.empirical.variance = m.variance();
    r.theory.mean = th.mean;
    r.theory.variance = th.variance;
    r.tests.push_back(mean_z("mean_z", m, th.mean, c.tolerances.moment_z));
    r.tests.push_back(variance_z("variance_z", m, th.variance, c.tolerances.moment_z));
}

}  // namespace

StatReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    StatReport r;
    r.config = config;
    switch (config.statistic) {
        case Statistic::leaves:
        case Statistic::diameter: run_leaves_or_diameter(r); break;
        case Statistic::maxdeg: run_maxdeg(r); break;
        case Statistic::degree_census: run_degree_census(r); break;
        case Statistic::gamma: run_gamma(r); break;
        case Statistic::dcov: run_dcov(r); break;
        case Statistic::runs_geometric: run_runs(r); break;
    }
    return r;
}

Matrix empirical_dcov(int n, std::int64_t samples, int m, std::uint64_t seed, int workers) {
    if (m < 1 || m > 8) throw InvalidArgument("empirical_dcov needs 1 <= m <= 8");
    if (n < 3) throw InvalidArgument("empirical_dcov needs n >= 3");
    if (samples < 1) throw InvalidArgument("empirical_dcov needs samples >= 1");
    ExperimentConfig c;
    c.n = n;
    c.samples = samples;
    c.seed = seed;
    c.m = m;
    c.workers = workers;
    c.statistic = Statistic::dcov;
    return covariance_over_n(degree_counts(c, m), samples, m, n);
}

}  // namespace permtree
