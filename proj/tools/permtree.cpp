// permtree command-line front end.
//
// Exit codes: 0 success, 1 a verification or experiment verdict failed,
// 2 usage error.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "permtree/counting.hpp"
#include "permtree/cover.hpp"
#include "permtree/errors.hpp"
#include "permtree/montecarlo.hpp"
#include "permtree/report_io.hpp"
#include "permtree/rng.hpp"
#include "permtree/stats.hpp"
#include "permtree/structure.hpp"

using namespace permtree;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
    std::string format = "json";
    int workers = 1;
};

json big_json(const BigInt& v) {
    if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return v.convert_to<std::uint64_t>();
    return to_string(v);
}

json perm_json(const Permutation& p) { return std::vector<Letter>(p.values().begin(), p.values().end()); }

std::string perm_csv(const Permutation& p) {
    std::string s;
    for (int i = 1; i <= p.size(); ++i) s += (i > 1 ? " " : "") + std::to_string(p.at(i));
    return s;
}

void emit_json(const json& j) { std::cout << j.dump() << '\n'; }

// ---- count

struct CountArgs {
    std::string what;
    int n = 0;
    int m = 0;
};

int run_count(const CountArgs& a, const Options& o) {
    BigInt value;
    if (a.what == "trees") {
        value = count_trees(a.n);
    } else if (a.what == "forests") {
        value = a.m > 0 ? forest_count(a.n, a.m) : forest_total(a.n);
    } else {
        value = indecomposable_count(a.n);
    }
    if (o.format == "text") {
        std::cout << to_string(value) << '\n';
    } else if (o.format == "csv") {
        std::cout << "what,n,m,count\n" << a.what << ',' << a.n << ',' << (a.m > 0 ? std::to_string(a.m) : "") << ',' << to_string(value) << '\n';
    } else {
        json j{{"schema", kSchema}, {"what", a.what}, {"n", a.n}, {"count", big_json(value)}};
        if (a.m > 0) j["m"] = a.m;
        emit_json(j);
    }
    return kOk;
}

// ---- enumerate and sample

struct TreeRow {
    TreeCode code;
    Permutation perm;
};

json tree_stats_json(const TreeRow& r) {
    const auto s = tree_stats(r.perm, false);
    return {{"code", r.code.to_hex()},
            {"perm", perm_json(r.perm)},
            {"leaves", s.leaves},
            {"diameter", s.diameter},
            {"max_degree", s.max_degree},
            {"gamma", gamma_formula(r.perm)}};
}

int emit_trees(int n, const std::string& emit, const Options& o, const std::function<void(const std::function<void(const TreeRow&)>&)>& each,
               json header) {
    if (o.format == "json") {
        json rows = json::array();
        each([&](const TreeRow& r) {
            if (emit == "perms") rows.push_back(perm_json(r.perm));
            else if (emit == "codes") rows.push_back(r.code.to_hex());
            else rows.push_back(tree_stats_json(r));
        });
        header["schema"] = kSchema;
        header["n"] = n;
        header[emit] = rows;
        emit_json(header);
        return kOk;
    }
    const bool csv = o.format == "csv";
    if (csv) {
        if (emit == "perms") std::cout << "perm\n";
        else if (emit == "codes") std::cout << "code\n";
        else std::cout << "code,perm,leaves,diameter,max_degree,gamma\n";
    }
    each([&](const TreeRow& r) {
        if (emit == "perms") {
            std::cout << (csv ? perm_csv(r.perm) : r.perm.to_string()) << '\n';
        } else if (emit == "codes") {
            std::cout << r.code.to_hex() << '\n';
        } else {
            const auto s = tree_stats(r.perm, false);
            const char sep = csv ? ',' : ' ';
            std::cout << r.code.to_hex() << sep << (csv ? perm_csv(r.perm) : r.perm.to_string()) << sep << s.leaves << sep << s.diameter
                      << sep << s.max_degree << sep << gamma_formula(r.perm) << '\n';
        }
    });
    return kOk;
}

struct EnumerateArgs {
    int n = 0;
    std::string emit = "perms";
};

int run_enumerate(const EnumerateArgs& a, const Options& o) {
    const auto range = enumerate_trees(a.n);
    return emit_trees(
        a.n, a.emit, o,
        [&](const std::function<void(const TreeRow&)>& f) {
            for (auto it = range.begin(); it != range.end(); ++it) {
                const auto code = TreeCode::from_integer(a.n, it.code());
                f({code, decode(code)});
            }
        },
        json::object());
}

struct SampleArgs {
    int n = 0;
    std::int64_t count = 1;
    std::uint64_t seed = 0;
    std::string emit = "perms";
};

int run_sample(const SampleArgs& a, const Options& o) {
    if (a.n < 1) throw InvalidArgument("sample needs n >= 1");
    if (a.count < 1) throw InvalidArgument("sample needs count >= 1");
    return emit_trees(
        a.n, a.emit, o,
        [&](const std::function<void(const TreeRow&)>& f) {
            for (std::int64_t i = 0; i < a.count; ++i) {
                Substream rng(a.seed, StreamTag::cli_sample, static_cast<std::uint64_t>(i));
                const auto code = random_code(a.n, rng);
                f({code, decode(code)});
            }
        },
        json{{"seed", a.seed}, {"count", a.count}});
}

// ---- stats

struct StatsArgs {
    ExperimentConfig config;
    std::string stat;
    std::string tolerance_file;
};

int run_stats(StatsArgs a, const Options& o) {
    a.config.statistic = parse_statistic(a.stat);
    a.config.workers = o.workers;
    if (!a.tolerance_file.empty()) a.config.tolerances = load_tolerances(a.tolerance_file);
    const auto report = run_experiment(a.config);
    if (o.format == "csv") {
        std::cout << histogram_csv(report);
    } else if (o.format == "text") {
        for (const auto& t : report.tests) {
            std::cout << (t.passed ? "pass " : "FAIL ") << t.name << " observed=" << t.observed << " expected=" << t.expected
                      << " statistic=" << t.statistic << " threshold=" << t.threshold << '\n';
        }
        std::cout << "verdict " << (report.passed() ? "pass" : "fail") << '\n';
    } else {
        emit_json(to_json(report));
    }
    return report.passed() ? kOk : kFailed;
}

// ---- theory

struct TheoryArgs {
    std::string stat;
    int n = 0;
    int k = 1;
    double q = 0.5;
};

json theory_json(const TheoryArgs& a) {
    json j{{"schema", kSchema}, {"stat", a.stat}, {"n", a.n}};
    if (a.stat == "leaves" || a.stat == "diam" || a.stat == "diameter") {
        const bool leaves = a.stat == "leaves";
        double mean = 0, second = 0;
        json pmf = json::object();
        for (int v = 1; v <= a.n; ++v) {
            const double p = leaves ? leaves_pmf(a.n, v) : diameter_pmf(a.n, v);
            if (p <= 0) continue;
            pmf[std::to_string(v)] = p;
            mean += v * p;
            second += static_cast<double>(v) * v * p;
        }
        j["mean"] = mean;
        j["variance"] = second - mean * mean;
        j["pmf"] = pmf;
    } else if (a.stat == "maxdeg") {
        j["k"] = a.k;
        j["centering"] = maxdeg_centering(a.n);
        j["cdf"] = maxdeg_cdf_approx(a.n, a.k);
    } else if (a.stat == "dcensus" || a.stat == "degree_census") {
        j["k"] = a.k;
        j["mean"] = degree_count_mean(a.n, a.k);
    } else if (a.stat == "ystar") {
        const auto m = y_star_moments(a.n, a.k);
        j["k"] = a.k;
        j["mean"] = m.mean;
        j["variance"] = m.variance;
        j["variance_exact"] = y_star_variance_exact(a.n, a.k);
    } else if (a.stat == "gamma") {
        const auto m = gamma_theory(a.n);
        j["mean"] = m.mean;
        j["variance"] = m.variance;
    } else if (a.stat == "dcov") {
        const auto m = degree_cov(a.k);
        json rows = json::array();
        for (int r = 0; r < m.rows; ++r) {
            json row = json::array();
            for (int c = 0; c < m.rows; ++c) row.push_back(m(r, c));
            rows.push_back(row);
        }
        j.erase("n");
        j["m"] = a.k;
        j["covariance"] = rows;
    } else if (a.stat == "runs" || a.stat == "runs_geometric") {
        const auto m = geometric_runs(a.n, a.q);
        j["q"] = a.q;
        j["mean"] = m.mean;
        j["variance"] = m.variance;
    } else {
        throw InvalidArgument("unknown theory statistic '" + a.stat + "'");
    }
    return j;
}

int run_theory(const TheoryArgs& a, const Options& o) {
    const auto j = theory_json(a);
    if (o.format == "json") {
        emit_json(j);
        return kOk;
    }
    const bool csv = o.format == "csv";
    if (csv) std::cout << "key,value\n";
    for (const auto& [key, value] : j.items()) {
        if (key == "schema") continue;
        std::cout << key << (csv ? "," : " ") << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
    return kOk;
}

// ---- verify

struct VerifyCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

std::vector<VerifyCheck> verify_battery(int max_n, int workers) {
    std::vector<VerifyCheck> checks;
    auto add = [&](std::string name, bool ok, std::string detail) { checks.push_back({std::move(name), ok, std::move(detail)}); };

    for (int n = 1; n <= std::min(max_n, kDefaultCensusCap); ++n) {
        const auto t = census(n, kDefaultCensusCap, workers);
        bool forests_ok = t.forest_total() == forest_total(n);
        for (const auto& [m, c] : t.forests) forests_ok = forests_ok && c == forest_count(n, m);
        add("census n=" + std::to_string(n), t.trees == count_trees(n) && t.connected == indecomposable_count(n) && forests_ok,
            "trees " + to_string(t.trees) + ", connected " + to_string(t.connected) + ", forests " + to_string(t.forest_total()));
    }

    for (int n = 1; n <= max_n; ++n) {
        std::uint64_t roundtrip = 0, not_tree = 0, adjacency = 0, gamma = 0, diameter = 0, coupling = 0, decomposition = 0;
        std::vector<std::int64_t> leaves(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& p : enumerate_trees(n)) {
            const auto code = encode(p);
            if (!(decode(code) == p)) ++roundtrip;
            if (!is_tree(p)) ++not_tree;
            const auto g = build_graph(p);
            const auto bd = blocks(p);
            for (int pos = 1; pos <= n; ++pos) {
                const auto nb = g.neighbors(p.at(pos));
                if (neighbors_via_blocks(bd, pos) != std::vector<Letter>(nb.begin(), nb.end())) ++adjacency;
            }
            const auto marked = marking_algorithm(g);
            if (!covers_every_edge(g, marked.chosen) || marked.size() != gamma_formula(p) || marked.size() != min_cover_oracle(g)) ++gamma;
            if (n >= 2) {
                const auto s = tree_stats(p, false);
                if (s.diameter != tree_diameter_bfs(g)) ++diameter;
                ++leaves[static_cast<std::size_t>(s.leaves)];
            }
            if (n >= 3 && !coupled_tree_stats_equivalence(code)) ++coupling;
            if (n >= 4 && !gamma_decomposition(code).holds()) ++decomposition;
        }
        const std::string tag = " n=" + std::to_string(n);
        add("roundtrip" + tag, roundtrip == 0 && not_tree == 0, std::to_string(code_count(n)) + " codes");
        add("adjacency rule" + tag, adjacency == 0, std::to_string(adjacency) + " mismatched positions");
        add("gamma three ways" + tag, gamma == 0, std::to_string(gamma) + " disagreements");
        add("diameter formula" + tag, diameter == 0, std::to_string(diameter) + " disagreements");
        if (n >= 3) {
            add("coupled degree census" + tag, coupling == 0, std::to_string(coupling) + " failures");
            double worst = 0;
            for (int l = 2; l <= n - 1; ++l) {
                const double freq = static_cast<double>(leaves[static_cast<std::size_t>(l)]) / static_cast<double>(code_count(n));
                worst = std::max(worst, std::abs(freq - leaves_pmf(n, l)));
            }
            add("leaves law" + tag, worst < 1e-12, "max gap " + std::to_string(worst));
        }
        if (n >= 4) add("gamma decomposition" + tag, decomposition == 0, std::to_string(decomposition) + " failures");
        if (n >= 5) {
            // Mean of Y*_k over every toss sequence against the exact formula.
            const int len = n - 3;
            double worst = 0;
            for (int k = 1; k <= n - 4; ++k) {
                double sum = 0;
                for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
                    CoinSequence seq;
                    for (int i = 0; i < len; ++i) seq.heads.push_back((b >> i) & 1u);
                    sum += static_cast<double>(coin_stats(seq).ystar(k));
                }
                worst = std::max(worst, std::abs(sum / static_cast<double>(std::uint64_t{1} << len) - y_star_moments(n, k).mean));
            }
            add("Y* means" + tag, worst < 1e-12, "max gap " + std::to_string(worst));
        }
    }
    return checks;
}

int run_verify(int max_n, const Options& o) {
    if (max_n < 1) throw InvalidArgument("verify needs --max-n >= 1");
    const auto checks = verify_battery(max_n, o.workers);
    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& c : checks) arr.push_back({{"name", c.name}, {"verdict", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
        emit_json({{"schema", kSchema}, {"max_n", max_n}, {"checks", arr}, {"verdict", all ? "pass" : "fail"}});
    } else if (o.format == "csv") {
        std::cout << "check,verdict,detail\n";
        for (const auto& c : checks) std::cout << '"' << c.name << "\"," << (c.passed ? "pass" : "fail") << ",\"" << c.detail << "\"\n";
    } else {
        for (const auto& c : checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
    }
    return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permutation trees: counting, enumeration, sampling and simulation"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options opts;
    app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--workers", opts.workers, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);

    CountArgs count;
    auto* c = app.add_subcommand("count", "count trees, forests or indecomposable permutations");
    c->add_option("--what", count.what, "trees|forests|indecomposable")->required()->check(CLI::IsMember({"trees", "forests", "indecomposable"}));
    c->add_option("--n", count.n, "length")->required()->check(CLI::PositiveNumber);
    c->add_option("--m", count.m, "number of components (forests only)")->check(CLI::PositiveNumber);

    EnumerateArgs enumerate;
    auto* e = app.add_subcommand("enumerate", "list every tree permutation of one length (capped by PERMTREE_ENUM_CAP)");
    e->add_option("--n", enumerate.n, "length")->required()->check(CLI::PositiveNumber);
    e->add_option("--emit", enumerate.emit, "perms|codes|stats")->check(CLI::IsMember({"perms", "codes", "stats"}));

    SampleArgs sample;
    auto* s = app.add_subcommand("sample", "draw uniform random tree permutations");
    s->add_option("--n", sample.n, "length")->required()->check(CLI::PositiveNumber);
    s->add_option("--count", sample.count, "number of trees")->check(CLI::PositiveNumber);
    s->add_option("--seed", sample.seed, "master seed")->required();
    s->add_option("--emit", sample.emit, "perms|codes|stats")->check(CLI::IsMember({"perms", "codes", "stats"}));

    StatsArgs stats;
    auto* st = app.add_subcommand("stats", "Monte Carlo experiment against the closed forms");
    st->add_option("--n", stats.config.n, "tree size (sequence length for runs)")->required();
    st->add_option("--samples", stats.config.samples, "number of samples")->required();
    st->add_option("--seed", stats.config.seed, "master seed")->required();
    st->add_option("--stat", stats.stat, "leaves|diam|maxdeg|dcensus|gamma|dcov|runs")
        ->required()
        ->check(CLI::IsMember({"leaves", "diam", "diameter", "maxdeg", "dcensus", "degree_census", "gamma", "dcov", "runs", "runs_geometric"}));
    st->add_option("--m", stats.config.m, "degree classes for dcensus/dcov");
    st->add_option("--q", stats.config.q, "geometric parameter for runs");
    st->add_option("--k-min", stats.config.k_min, "smallest k for maxdeg");
    st->add_option("--k-max", stats.config.k_max, "largest k for maxdeg");
    st->add_option("--tolerances", stats.tolerance_file, "tolerance config (JSON)");

    TheoryArgs theory;
    auto* th = app.add_subcommand("theory", "evaluate a closed form");
    th->add_option("--stat", theory.stat, "leaves|diam|maxdeg|dcensus|ystar|gamma|dcov|runs")->required();
    th->add_option("--n", theory.n, "size");
    th->add_option("--k", theory.k, "index (k for maxdeg/dcensus/ystar, m for dcov)");
    th->add_option("--q", theory.q, "geometric parameter for runs");

    int max_n = 8;
    auto* v = app.add_subcommand("verify", "run the exhaustive cross-check battery");
    v->add_option("--max-n", max_n, "largest length to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*c) return run_count(count, opts);
        if (*e) return run_enumerate(enumerate, opts);
        if (*s) return run_sample(sample, opts);
        if (*st) return run_stats(stats, opts);
        if (*th) {
            if (theory.stat != "dcov" && !th->count("--n")) throw InvalidArgument("--n is required for --stat " + theory.stat);
            return run_theory(theory, opts);
        }
        if (*v) return run_verify(max_n, opts);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
