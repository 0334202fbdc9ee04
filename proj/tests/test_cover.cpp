#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "permtree/cover.hpp"
#include "permtree/errors.hpp"
#include "permtree/rng.hpp"

using namespace permtree;

namespace {

oracle::Word word(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

const Permutation kSixPath{2, 4, 1, 6, 3, 5};
const Permutation kFivePath{2, 4, 1, 5, 3};

}  // namespace

TEST_SUITE("cover") {

TEST_CASE("path permutations are what they claim") {
    const auto g6 = build_graph(kSixPath);
    CHECK(is_tree(kSixPath));
    for (Letter v = 1; v <= 6; ++v) CHECK(g6.degree(v) <= 2);
    CHECK(tree_stats(kSixPath).diameter == 5);
    CHECK(tree_stats(kFivePath).diameter == 4);
}

TEST_CASE("marking examples") {
    const auto star = marking_algorithm(Permutation{2, 3, 4, 1});
    CHECK(star.chosen == std::vector<Letter>{1});
    CHECK(star.s1 == std::vector<Letter>{1});
    const auto path = marking_algorithm(Permutation{2, 4, 1, 3});
    CHECK(path.chosen == std::vector<Letter>{1, 4});
    CHECK(marking_algorithm(kSixPath).size() == 3);
    CHECK(marking_algorithm(Permutation{2, 1}).chosen == std::vector<Letter>{1});
    CHECK(marking_algorithm(Permutation{1}).size() == 0);
}

TEST_CASE("formula examples") {
    CHECK(gamma_formula(Permutation{2, 3, 4, 1}) == 1);
    CHECK(gamma_formula(kSixPath) == 3);
    CHECK(gamma_formula(kFivePath) == 2);
    CHECK(gamma_formula(Permutation{2, 1}) == 1);
    CHECK(min_cover_oracle(Permutation{2, 1}) == 1);
    CHECK(min_cover_oracle(Permutation{2, 3, 4, 5, 6, 1}) == 1);
    CHECK(min_cover_oracle(kSixPath) == 3);
}

TEST_CASE("marking works on forests") {
    const Permutation w{2, 1, 4, 3, 5};
    const auto g = build_graph(w);
    const auto r = marking_algorithm(g);
    CHECK(covers_every_edge(g, r.chosen));
    CHECK(r.size() == min_cover_oracle(g));
}

TEST_CASE("four ways agree on every tree, n <= 10") {
    for (int n = 1; n <= 10; ++n) {
        for (const auto& p : enumerate_trees(n)) {
            const auto g = build_graph(p);
            const auto marked = marking_algorithm(g);
            REQUIRE(covers_every_edge(g, marked.chosen));
            const auto brute = oracle::min_edge_cover_by_subsets(word(p));
            REQUIRE(marked.size() == brute);
            REQUIRE(gamma_formula(p) == brute);
            REQUIRE(min_cover_oracle(g) == brute);
            if (n >= 3) {
                auto fr = first_round_set(p);
                std::sort(fr.begin(), fr.end());
                REQUIRE(fr == marked.s1);
            }
        }
    }
}

TEST_CASE("decomposition holds on every code, n <= 14") {
    for (int n = 4; n <= 14; ++n) {
        for (std::uint64_t c = 0; c < code_count(n); ++c) REQUIRE(gamma_decomposition(TreeCode::from_integer(n, c)).holds());
    }
    // Star: all I1.
    TreeCode star(8);
    for (int j = 0; j < star.length(); ++j) star.set(j, true);
    const auto d = gamma_decomposition(star);
    CHECK(d.gamma == 1);
    CHECK(d.total() == 1);
    for (std::uint64_t i = 0; i < 5; ++i) {
        Substream rng(23, StreamTag::tree, i);
        CHECK(gamma_decomposition(random_code(10000, rng)).holds());
    }
    CHECK_THROWS_AS(gamma_decomposition(TreeCode(3)), TooSmall);
}

TEST_CASE("theory") {
    const auto t = gamma_theory(300);
    CHECK(t.mean == doctest::Approx(100));
    CHECK(t.variance == doctest::Approx(78));
}

}
