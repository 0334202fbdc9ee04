#include <cstdlib>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "permtree/errors.hpp"
#include "permtree/montecarlo.hpp"
#include "permtree/rng.hpp"
#include "permtree/tree_codec.hpp"

using namespace permtree;

namespace {

oracle::Word word(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST_SUITE("tree_codec") {

TEST_CASE("insertion examples") {
    CHECK(insert_i1(Permutation{2, 1}) == Permutation{2, 3, 1});
    CHECK(insert_i1(Permutation{2, 3, 1}) == Permutation{2, 3, 4, 1});
    CHECK(insert_i1(Permutation{3, 1, 2}) == Permutation{3, 1, 4, 2});
    CHECK(insert_i2(Permutation{2, 1}) == Permutation{3, 1, 2});
    CHECK(insert_i2(Permutation{2, 3, 1}) == Permutation{2, 4, 1, 3});
    CHECK(insert_i2(Permutation{3, 1, 2}) == Permutation{4, 1, 2, 3});
    CHECK_THROWS_AS(insert_i1(Permutation{1, 2}, Check::verify), NotATree);
    CHECK_THROWS_AS(insert_i2(Permutation{1}), InvalidArgument);
}

TEST_CASE("decode and encode examples") {
    CHECK(decode(TreeCode(2)) == Permutation{2, 1});
    CHECK(decode(TreeCode(1)) == Permutation{1});
    CHECK(decode(TreeCode::from_insertions(3, {Insertion::I1})) == Permutation{2, 3, 1});
    CHECK(decode(TreeCode::from_insertions(3, {Insertion::I2})) == Permutation{3, 1, 2});
    CHECK(decode(TreeCode::from_insertions(4, {Insertion::I1, Insertion::I2})) == Permutation{2, 4, 1, 3});
    CHECK(encode(Permutation{2, 1}).length() == 0);
    CHECK(encode(Permutation{2, 4, 1, 3}) == TreeCode::from_insertions(4, {Insertion::I1, Insertion::I2}));
    CHECK(encode(Permutation{3, 1, 4, 2}) == TreeCode::from_insertions(4, {Insertion::I2, Insertion::I1}));
    CHECK_THROWS_AS(encode(Permutation{1, 2, 3}), NotATree);
    CHECK_THROWS_AS(encode(Permutation{3, 2, 1}), NotATree);
}

TEST_CASE("decode matches step-by-step insertion with verification") {
    for (int n = 2; n <= 10; ++n) {
        for (std::uint64_t c = 0; c < code_count(n); ++c) {
            const auto code = TreeCode::from_integer(n, c);
            Permutation p{2, 1};
            for (int j = 0; j < code.length(); ++j) p = code.bit(j) ? insert_i1(p, Check::verify) : insert_i2(p, Check::verify);
            REQUIRE(decode(code) == p);
        }
    }
}

TEST_CASE("count_trees") {
    CHECK(count_trees(1) == 1);
    CHECK(count_trees(2) == 1);
    CHECK(count_trees(8) == 64);
    CHECK(count_trees(100) == BigInt(1) << 98);
}

TEST_CASE("enumerate small n") {
    std::set<Permutation> three(enumerate_trees(3).begin(), enumerate_trees(3).end());
    CHECK(three == std::set<Permutation>{Permutation{2, 3, 1}, Permutation{3, 1, 2}});
    std::set<Permutation> four(enumerate_trees(4).begin(), enumerate_trees(4).end());
    CHECK(four == std::set<Permutation>{Permutation{2, 3, 4, 1}, Permutation{2, 4, 1, 3}, Permutation{3, 1, 4, 2},
                                        Permutation{4, 1, 2, 3}});
    auto one = enumerate_trees(1);
    REQUIRE(one.size() == 1);
    CHECK(*one.begin() == Permutation{1});
}

TEST_CASE("decode image is the brute-force tree set for n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        std::set<oracle::Word> image;
        for (const auto& p : enumerate_trees(n)) image.insert(word(p));
        CHECK(image == oracle::all_trees(n));
    }
}

TEST_CASE("roundtrip over all codes, n <= 16") {
    for (int n = 1; n <= 16; ++n) {
        for (std::uint64_t c = 0; c < code_count(n); ++c) {
            const auto code = TreeCode::from_integer(n, c);
            REQUIRE(encode(decode(code)) == code);
        }
    }
}

TEST_CASE("roundtrip of long codes spanning several words") {
    for (int n : {65, 66, 67, 130, 1000}) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            Substream rng(99, StreamTag::tree, i);
            const auto code = random_code(n, rng);
            const auto p = decode(code);
            REQUIRE(p.size() == n);
            REQUIRE(encode(p) == code);
            if (n <= 130) REQUIRE(is_tree(p));
        }
    }
}

TEST_CASE("hex form") {
    const auto code = TreeCode::from_integer(12, 0x2a7);
    CHECK(code.to_hex() == "0x2a7");
    CHECK(TreeCode::from_hex(12, "0x2a7") == code);
    CHECK(TreeCode::from_hex(12, "2A7") == code);
    CHECK(TreeCode(5).to_hex() == "0x0");
    CHECK_THROWS_AS(TreeCode::from_hex(5, "0xff"), InvalidArgument);
    CHECK_THROWS_AS(TreeCode::from_hex(5, "0xzz"), InvalidArgument);
    CHECK(TreeCode::from_integer(4, 1).to_bit_string() == "10");
    Substream rng(1, StreamTag::tree, 0);
    const auto big = random_code(200, rng);
    CHECK(TreeCode::from_hex(200, big.to_hex()) == big);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_trees(12, 10), CapExceeded);
    CHECK(enumerate_trees(10, 10).size() == 256);
    ::setenv("PERMTREE_ENUM_CAP", "12", 1);
    CHECK(enumeration_cap() == 12);
    ::setenv("PERMTREE_ENUM_CAP", "banana", 1);
    CHECK_THROWS_AS(enumeration_cap(), InvalidConfig);
    ::unsetenv("PERMTREE_ENUM_CAP");
    CHECK(enumeration_cap() == kDefaultEnumerationCap);
}

TEST_CASE("sampling") {
    Substream a(5, StreamTag::tree, 0);
    CHECK(sample_tree(2, a) == Permutation{2, 1});

    int first = 0;
    const int draws = 100000;
    const auto target = Permutation{2, 3, 1};
    for (int i = 0; i < draws; ++i) {
        Substream rng(0xC0FFEE, StreamTag::tree, static_cast<std::uint64_t>(i));
        if (sample_tree(3, rng) == target) ++first;
    }
    CHECK(std::abs(first / double(draws) - 0.5) < 0.01);

    std::map<std::int64_t, std::int64_t> hist;
    for (int i = 0; i < draws; ++i) {
        Substream rng(0xC0FFEE, StreamTag::tree, static_cast<std::uint64_t>(i));
        ++hist[static_cast<std::int64_t>(random_code(12, rng).low_word())];
    }
    std::map<std::int64_t, double> uniform;
    for (std::int64_t c = 0; c < 1024; ++c) uniform[c] = 1.0 / 1024;
    const auto chi = chi_square(hist, uniform);
    CHECK(chi.dof == 1023);
    CHECK(chi.statistic < chi_square_quantile(chi.dof, 0.999));
}

}
