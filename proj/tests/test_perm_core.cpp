#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "permtree/errors.hpp"
#include "permtree/permutation.hpp"

using namespace permtree;

namespace {

oracle::Word word(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

template <class F>
void for_all_perms(int n, F f) {
    std::vector<Letter> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    do f(Permutation::from_trusted(w));
    while (std::next_permutation(w.begin(), w.end()));
}

}  // namespace

TEST_SUITE("perm_core") {

TEST_CASE("construction validates") {
    CHECK_THROWS_AS(Permutation({1, 1, 2}), InvalidPermutation);
    CHECK_THROWS_AS(Permutation({0, 1}), InvalidPermutation);
    CHECK_THROWS_AS(Permutation({1, 3}), InvalidPermutation);
    CHECK_THROWS_AS(Permutation(std::vector<Letter>{}), InvalidPermutation);
    const Permutation p{3, 1, 2};
    CHECK(p.size() == 3);
    CHECK(p.at(1) == 3);
    CHECK(p.to_string() == "(3,1,2)");
    CHECK(p.m() == 1);
    CHECK(Permutation::identity(4) == Permutation{1, 2, 3, 4});
}

TEST_CASE("inversions small cases") {
    CHECK(inversions(Permutation{1, 2, 3}).empty());
    CHECK(inversions(Permutation{3, 1, 2}) == std::vector<Inversion>{{3, 1}, {3, 2}});
}

TEST_CASE("worked example neighborhoods") {
    const Permutation w{2, 5, 1, 3, 6, 7, 11, 4, 8, 9, 10};
    const auto g = build_graph(w);
    const auto n5 = g.neighbors(5);
    const auto n4 = g.neighbors(4);
    CHECK(std::vector<Letter>(n5.begin(), n5.end()) == std::vector<Letter>{1, 3, 4});
    CHECK(std::vector<Letter>(n4.begin(), n4.end()) == std::vector<Letter>{5, 6, 7, 11});
    CHECK(is_tree(w));
}

TEST_CASE("graph examples") {
    const auto edge = build_graph(Permutation{2, 1});
    CHECK(edge.edge_count() == 1);
    CHECK(edge.degree(1) == 1);
    const auto star = build_graph(Permutation{2, 3, 4, 1});
    CHECK(star.edge_count() == 3);
    CHECK(star.degree(1) == 3);
    const auto path = build_graph(Permutation{2, 4, 1, 3});
    CHECK(path.edge_count() == 3);
    CHECK(path.degree(1) == 2);
    CHECK(path.degree(4) == 2);
    CHECK(path.degree(2) == 1);
    CHECK(path.degree(3) == 1);
}

TEST_CASE("indecomposable and components examples") {
    CHECK_FALSE(is_indecomposable(Permutation{1, 2, 3}));
    CHECK(is_indecomposable(Permutation{2, 3, 1}));
    CHECK_FALSE(is_indecomposable(Permutation{2, 1, 4, 3}));
    CHECK(components(Permutation{1, 2, 3}) == std::vector<PositionRange>{{1, 1}, {2, 2}, {3, 3}});
    CHECK(components(Permutation{2, 1, 4, 3}) == std::vector<PositionRange>{{1, 2}, {3, 4}});
    CHECK(components(Permutation{2, 3, 1}) == std::vector<PositionRange>{{1, 3}});
}

TEST_CASE("pattern examples") {
    CHECK(pattern_flags(Permutation{1, 2, 3}) == PatternFlags{false, false});
    CHECK(pattern_flags(Permutation{3, 2, 1}) == PatternFlags{true, false});
    CHECK(pattern_flags(Permutation{3, 4, 1, 2}) == PatternFlags{false, true});
}

TEST_CASE("exhaustive agreement with naive oracles, n <= 7") {
    for (int n = 1; n <= 7; ++n) {
        for_all_perms(n, [&](const Permutation& p) {
            const auto w = word(p);
            const auto inv = inversions(p);
            REQUIRE(inv.size() == oracle::inversions(w).size());
            CHECK(inversion_count(p) == static_cast<std::int64_t>(inv.size()));
            const auto g = build_graph(p);
            CHECK(g.is_connected() == oracle::connected(w));
            CHECK(is_indecomposable(p) == oracle::indecomposable(w));
            CHECK(is_indecomposable(p) == g.is_connected());
            CHECK(static_cast<int>(components(p).size()) == oracle::component_count(w));
            const auto flags = pattern_flags(p);
            CHECK(flags.has_321 == oracle::has_321(w));
            CHECK(flags.has_3412 == oracle::has_3412(w));
            CHECK(is_forest(p) == oracle::forest(w));
            CHECK(is_tree(p) == oracle::tree(w));
            CHECK(g.is_acyclic() == oracle::forest(w));
        });
    }
}

TEST_CASE("forest iff avoids 321 and 3412") {
    for (int n = 1; n <= 8; ++n) {
        for_all_perms(n, [&](const Permutation& p) {
            const auto f = pattern_flags(p);
            REQUIRE(is_forest(p) == (!f.has_321 && !f.has_3412));
        });
    }
}

TEST_CASE("random permutations agree with oracles at n = 40") {
    std::mt19937_64 rng(7);
    std::vector<Letter> w(40);
    std::iota(w.begin(), w.end(), 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::shuffle(w.begin(), w.end(), rng);
        const auto p = Permutation::from_trusted(w);
        const oracle::Word ow(w.begin(), w.end());
        CHECK(inversion_count(p) == static_cast<std::int64_t>(oracle::inversions(ow).size()));
        CHECK(pattern_flags(p).has_321 == oracle::has_321(ow));
        CHECK(is_indecomposable(p) == oracle::indecomposable(ow));
    }
}

TEST_CASE("components tile the positions and each is indecomposable") {
    for_all_perms(6, [&](const Permutation& p) {
        int next = 1;
        for (const auto& r : components(p)) {
            REQUIRE(r.first == next);
            next = r.last + 1;
        }
        REQUIRE(next == 7);
    });
}

}
