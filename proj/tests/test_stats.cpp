#include <cmath>
#include <map>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "permtree/errors.hpp"
#include "permtree/rng.hpp"
#include "permtree/stats.hpp"
#include "permtree/tree_codec.hpp"

using namespace permtree;

namespace {

oracle::Word word(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

std::string tosses_of(std::uint64_t bits, int len) {
    std::string s;
    for (int i = 0; i < len; ++i) s += ((bits >> i) & 1u) ? 'H' : 'T';
    return s;
}

std::string ystar_pattern(int k) { return "H" + std::string(static_cast<std::size_t>(k - 1), 'T') + "H"; }
std::string zstar_pattern(int k) { return "T" + std::string(static_cast<std::size_t>(k + 1), 'H') + "T"; }

// Exact mean and variance of a statistic of the tosses over all 2^len sequences.
template <class F>
std::pair<double, double> exhaustive_moments(int len, F f) {
    double s = 0, s2 = 0;
    const std::uint64_t total = std::uint64_t{1} << len;
    for (std::uint64_t b = 0; b < total; ++b) {
        const double v = f(tosses_of(b, len));
        s += v;
        s2 += v * v;
    }
    const double mean = s / static_cast<double>(total);
    return {mean, s2 / static_cast<double>(total) - mean * mean};
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("tree_stats examples") {
    const auto e = tree_stats(Permutation{2, 1});
    CHECK(e.leaves == 2);
    CHECK(e.diameter == 1);
    CHECK(e.max_degree == 1);
    const auto star = tree_stats(Permutation{2, 3, 4, 1});
    CHECK(star.leaves == 3);
    CHECK(star.diameter == 2);
    CHECK(star.diameter_bfs == 2);
    CHECK(star.max_degree == 3);
    std::map<int, int> hist;
    for (const auto& p : enumerate_trees(5)) ++hist[tree_stats(p).leaves];
    CHECK(hist == std::map<int, int>{{2, 2}, {3, 4}, {4, 2}});
}

TEST_CASE("diameter formula against all-pairs BFS") {
    for (int n = 2; n <= 10; ++n) {
        for (const auto& p : enumerate_trees(n)) {
            const auto s = tree_stats(p, true);
            REQUIRE(s.diameter == oracle::diameter_all_pairs(word(p)));
            REQUIRE(s.diameter_bfs == s.diameter);
        }
    }
    for (std::uint64_t i = 0; i < 50; ++i) {
        Substream rng(11, StreamTag::tree, i);
        const auto p = sample_tree(2000, rng);
        REQUIRE(tree_stats(p, true).diameter_bfs == tree_stats(p, false).diameter);
    }
}

TEST_CASE("coin sequence of the worked example") {
    const auto seq = CoinSequence::parse("THHTTHT", false);
    const auto y = seq.coupled();
    std::string bits;
    for (bool b : y) bits += b ? '1' : '0';
    CHECK(bits == "00100011");
    // Blocks 00|1|000|11.
    const auto s = coin_stats(seq);
    CHECK(s.block_count == 4);
    CHECK(s.y(1) == 1);
    CHECK(s.y(2) == 2);
    CHECK(s.y(3) == 1);
    CHECK(s.first_block == 2);
    CHECK(s.last_block == 2);
    CHECK(seq.to_string() == "THHTTHT");
    CHECK_THROWS_AS(CoinSequence::parse("THX", false), InvalidArgument);
}

TEST_CASE("all tails gives one block") {
    const auto s = coin_stats(CoinSequence::parse("TTTTT", false));
    CHECK(s.block_count == 1);
    CHECK(s.y(6) == 1);
    for (int k = 1; k <= 8; ++k) CHECK(s.ystar(k) == 0);
    CHECK(s.longest_tail_run == 5);
    CHECK_FALSE(s.all_heads);
}

TEST_CASE("coin_stats against window and run oracles") {
    for (int len = 0; len <= 12; ++len) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
            const auto tosses = tosses_of(b, len);
            const auto seq = CoinSequence::parse(tosses, (b & 1u) != 0);
            const auto s = coin_stats(seq);
            std::vector<int> y01;
            for (bool v : seq.coupled()) y01.push_back(v);
            const auto runs = oracle::run_lengths(y01);
            REQUIRE(s.block_count == static_cast<int>(runs.size()));
            REQUIRE(s.first_block == runs.front());
            REQUIRE(s.last_block == runs.back());
            for (int k = 1; k <= len + 1; ++k) {
                REQUIRE(s.y(k) == std::count(runs.begin(), runs.end(), k));
                REQUIRE(s.ystar(k) == oracle::window_count(tosses, ystar_pattern(k)));
                REQUIRE(y_star_from_blocks(s, k) == s.ystar(k));
            }
            for (int k = 0; k <= len; ++k) REQUIRE(s.zstar(k) == oracle::window_count(tosses, zstar_pattern(k)));
            REQUIRE(s.longest_tail_run == oracle::longest_run_of(tosses, 'T'));
            const bool has_t = tosses.find('T') != std::string::npos;
            REQUIRE(s.all_heads == (len > 0 && !has_t));
            const int lead = has_t ? static_cast<int>(tosses.find('T')) : 0;
            const int trail = has_t ? static_cast<int>(tosses.size() - 1 - tosses.rfind('T')) : 0;
            REQUIRE(s.leading_heads == lead);
            REQUIRE(s.trailing_heads == trail);
            std::int64_t gap = 0;
            for (int k = 2; k <= len + 1; ++k) gap += s.y(k) - s.ystar(k);
            REQUIRE(gap >= 0);
            REQUIRE(gap <= 2);
        }
    }
}

TEST_CASE("alternating tosses") {
    const std::string alt = "HTHTHTHTHTH";
    const auto s = coin_stats(CoinSequence::parse(alt, false));
    CHECK(s.ystar(2) == oracle::window_count(alt, "HTH"));
    CHECK(s.ystar(2) == 5);
}

TEST_CASE("coin coupling matches the degree census on every code, n <= 14") {
    for (int n = 3; n <= 14; ++n) {
        for (std::uint64_t c = 0; c < code_count(n); ++c) REQUIRE(coupled_tree_stats_equivalence(TreeCode::from_integer(n, c)));
    }
    for (std::uint64_t i = 0; i < 5; ++i) {
        Substream rng(17, StreamTag::tree, i);
        CHECK(coupled_tree_stats_equivalence(random_code(10000, rng)));
    }
}

TEST_CASE("degrees follow block sizes") {
    for (int n = 3; n <= 12; ++n) {
        for (std::uint64_t c = 0; c < code_count(n); ++c) {
            const auto code = TreeCode::from_integer(n, c);
            std::vector<int> bits;
            for (int j = 0; j < code.length(); ++j) bits.push_back(code.bit(j));
            const auto runs = oracle::run_lengths(bits);
            const auto census = tree_stats(decode(code), false).census;
            REQUIRE(census[1] == n - static_cast<std::int64_t>(runs.size()));
            for (int k = 1; k <= n; ++k) REQUIRE(census[k + 1] == std::count(runs.begin(), runs.end(), k));
        }
    }
}

TEST_CASE("leaves and diameter pmf") {
    CHECK(leaves_pmf(3, 2) == 1.0);
    CHECK(leaves_pmf(5, 3) == 0.5);
    CHECK(leaves_pmf(5, 5) == 0.0);
    CHECK(diameter_pmf(5, 5 - 3 + 1) == 0.5);
    CHECK_THROWS_AS(leaves_pmf(2, 2), InvalidArgument);
    for (int n : {3, 10, 40, 80}) {
        const auto row = oracle::binomial_half(n - 3);
        double total = 0;
        for (int l = 2; l <= n - 1; ++l) {
            CHECK(leaves_pmf(n, l) == doctest::Approx(row[static_cast<std::size_t>(l - 2)]).epsilon(1e-12));
            total += leaves_pmf(n, l);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("max degree law") {
    CHECK(maxdeg_centering(2051) == 11);
    CHECK(maxdeg_cdf_approx(2051, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(maxdeg_cdf_approx(2051, 60) == doctest::Approx(1.0));
    CHECK(maxdeg_cdf_approx(2051, -10) < 1e-100);
    double prev = 0;
    for (int k = -5; k <= 10; ++k) {
        const double v = maxdeg_cdf_approx(1000, k);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("Y* moments") {
    CHECK(y_star_moments(10, 2).mean == doctest::Approx(0.625));
    CHECK(y_star_moments(100, 1).variance == doctest::Approx(31.25));
    for (int n = 5; n <= 18; ++n) {
        for (int k = 1; k <= n - 4; ++k) {
            const auto [mean, var] = exhaustive_moments(n - 3, [&](const std::string& t) { return oracle::window_count(t, ystar_pattern(k)); });
            REQUIRE(y_star_moments(n, k).mean == doctest::Approx(mean).epsilon(1e-12));
            REQUIRE(y_star_variance_exact(n, k) == doctest::Approx(var).epsilon(1e-9));
        }
    }
    // Exact variance grows by sigma_kk per extra toss once n is large.
    for (int k = 1; k <= 6; ++k) {
        const double slope = y_star_variance_exact(41, k) - y_star_variance_exact(40, k);
        CHECK(slope == doctest::Approx(sigma_entry(k, k)).epsilon(1e-12));
        CHECK(y_star_moments(40, k).variance == doctest::Approx(40 * sigma_entry(k, k)));
    }
}

TEST_CASE("block and degree count means") {
    for (int n = 3; n <= 14; ++n) {
        std::vector<double> mean_y(static_cast<std::size_t>(n + 1), 0.0);
        for (std::uint64_t c = 0; c < code_count(n); ++c) {
            std::vector<int> bits;
            for (int j = 0; j < n - 2; ++j) bits.push_back(static_cast<int>((c >> j) & 1u));
            for (int r : oracle::run_lengths(bits)) mean_y[static_cast<std::size_t>(r)] += 1;
        }
        for (auto& v : mean_y) v /= static_cast<double>(code_count(n));
        for (int k = 1; k <= n - 1; ++k) {
            REQUIRE(block_count_mean(n, k) == doctest::Approx(mean_y[static_cast<std::size_t>(k)]).epsilon(1e-12));
            if (k >= 2) REQUIRE(degree_count_mean(n, k) == doctest::Approx(mean_y[static_cast<std::size_t>(k - 1)]).epsilon(1e-12));
        }
        CHECK(degree_count_mean(n, 1) == doctest::Approx((n + 1) / 2.0));
    }
}

TEST_CASE("sigma entries") {
    CHECK(sigma_entry(1, 1) == doctest::Approx(5.0 / 16));
    CHECK(sigma_entry(2, 2) == doctest::Approx(7.0 / 64));
    CHECK(sigma_entry(1, 2) == 0.0);
    CHECK(sigma_entry(2, 3) == doctest::Approx(-2.0 / 128));
    CHECK(sigma_entry(3, 2) == sigma_entry(2, 3));
}

TEST_CASE("degree covariance limit") {
    const auto m = degree_cov(5);
    CHECK(m(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m(1, 1) == doctest::Approx(5.0 / 16));
    CHECK(m(1, 2) == doctest::Approx(0.0));
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(m(i, j) == m(j, i));

    // Exact covariance of the block-size census grows by the limit entry per extra vertex.
    auto exact_cov = [](int n) {
        const int dims = 5;
        std::vector<double> s(dims, 0), cross(dims * dims, 0);
        const auto total = code_count(n);
        for (std::uint64_t c = 0; c < total; ++c) {
            std::vector<int> bits;
            for (int j = 0; j < n - 2; ++j) bits.push_back(static_cast<int>((c >> j) & 1u));
            const auto runs = oracle::run_lengths(bits);
            std::vector<double> d(dims, 0);
            d[0] = n - static_cast<double>(runs.size());
            for (int r : runs) {
                if (r + 1 <= dims) d[static_cast<std::size_t>(r)] += 1;
            }
            for (int a = 0; a < dims; ++a) {
                s[static_cast<std::size_t>(a)] += d[static_cast<std::size_t>(a)];
                for (int b = 0; b < dims; ++b) cross[static_cast<std::size_t>(a * dims + b)] += d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(b)];
            }
        }
        Matrix cov(dims);
        const double t = static_cast<double>(total);
        for (int a = 0; a < dims; ++a)
            for (int b = 0; b < dims; ++b)
                cov(a, b) = cross[static_cast<std::size_t>(a * dims + b)] / t - s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)] / (t * t);
        return cov;
    };
    const auto c19 = exact_cov(19), c20 = exact_cov(20);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) CHECK(c20(a, b) - c19(a, b) == doctest::Approx(m(a, b)).epsilon(1e-6));
}

TEST_CASE("geometric runs") {
    for (int n : {1, 2, 3, 10, 1000}) {
        const auto r = geometric_runs(n, 0.5);
        CHECK(r.mean == doctest::Approx(2.0 * n / 3 + 1.0 / 3));
        CHECK(r.variance == doctest::Approx(2.0 * n / 7 - 22.0 / 63 > 0 ? 2.0 * n / 7 - 22.0 / 63 : 0.0).epsilon(1e-12));
        for (double q : {0.1, 0.3, 0.5, 0.8}) {
            const auto [mean, var] = oracle::geometric_runs_moments(n, q);
            const auto g = geometric_runs(n, q);
            CHECK(g.mean == doctest::Approx(mean).epsilon(1e-10));
            CHECK(g.variance == doctest::Approx(var).epsilon(1e-9));
        }
    }
    CHECK(geometric_runs(1, 0.3).mean == doctest::Approx(1.0));
    CHECK(geometric_runs(1, 0.3).variance == doctest::Approx(0.0));
    CHECK_THROWS_AS(geometric_runs(5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(geometric_runs(5, 0.0), InvalidArgument);
}

}
