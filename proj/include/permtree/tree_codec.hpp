#pragma once

// Insertion histories of tree permutations.
//
// Every tree permutation of length n >= 2 is reached from (2,1) by a unique
// sequence of n-2 insertions, each either I1 (insert n+1 before the last
// letter) or I2 (rename n to n+1 and append n). A TreeCode stores that
// sequence packed into 64-bit words: bit j is the insertion of letter j+3,
// 1 for I1 and 0 for I2.

#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "permtree/bigint.hpp"
#include "permtree/permutation.hpp"

namespace permtree {

enum class Insertion : std::uint8_t { I2 = 0, I1 = 1 };

class TreeCode {
public:
    /// All-I2 code for length n >= 1.
    explicit TreeCode(int n);

    /// Code whose first bits come from `packed` (n - 2 <= 64).
    static TreeCode from_integer(int n, std::uint64_t packed);
    static TreeCode from_insertions(int n, const std::vector<Insertion>& ops);

    /// Parses "0x..." (or bare hex digits) for length n.
    static TreeCode from_hex(int n, const std::string& hex);

    int n() const { return n_; }
    /// Number of insertions, max(n - 2, 0).
    int length() const { return n_ > 2 ? n_ - 2 : 0; }

    bool bit(int j) const { return (words_[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u; }
    Insertion at(int j) const { return bit(j) ? Insertion::I1 : Insertion::I2; }
    void set(int j, bool value);
    /// Overwrites packed word i; bits past length() are cleared.
    void set_word(std::size_t i, std::uint64_t word);

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::uint64_t low_word() const { return words_.empty() ? 0 : words_.front(); }

    /// Lowercase hex of the packed integer, "0x" prefixed, no leading zeros.
    std::string to_hex() const;
    std::string to_bit_string() const;

    friend bool operator==(const TreeCode&, const TreeCode&) = default;

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

enum class Check { none, verify };

/// w_1..w_{n-1}, n+1, w_n. With Check::verify, rejects non-tree input.
Permutation insert_i1(const Permutation& perm, Check check = Check::none);

/// Renames n to n+1 and appends n.
Permutation insert_i2(const Permutation& perm, Check check = Check::none);

Permutation decode(const TreeCode& code);

/// Inverse of decode; throws NotATree.
TreeCode encode(const Permutation& perm);

/// t_1 = 1, t_n = 2^(n-2).
BigInt count_trees(int n);

/// Default cap on exhaustive tree enumeration, overridable via PERMTREE_ENUM_CAP.
inline constexpr int kDefaultEnumerationCap = 30;
int enumeration_cap();

/// Tree permutations of one length, in packed-integer code order. A range
/// over a half-open code interval so sweeps can be split across workers.
class TreeRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Permutation;
        using difference_type = std::ptrdiff_t;

        iterator(int n, std::uint64_t code) : n_(n), code_(code) {}
        Permutation operator*() const { return decode(TreeCode::from_integer(n_, code_)); }
        iterator& operator++() {
            ++code_;
            return *this;
        }
        iterator operator++(int) {
            auto tmp = *this;
            ++code_;
            return tmp;
        }
        std::uint64_t code() const { return code_; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.code_ == b.code_; }

    private:
        int n_;
        std::uint64_t code_;
    };

    TreeRange(int n, std::uint64_t first, std::uint64_t last) : n_(n), first_(first), last_(last) {}

    iterator begin() const { return {n_, first_}; }
    iterator end() const { return {n_, last_}; }
    std::uint64_t size() const { return last_ - first_; }
    int n() const { return n_; }

private:
    int n_;
    std::uint64_t first_;
    std::uint64_t last_;
};

/// Number of codes of length n as a machine integer (n <= 65).
std::uint64_t code_count(int n);

/// Every tree permutation of length n; throws CapExceeded when n > cap.
TreeRange enumerate_trees(int n, int cap = enumeration_cap());

/// Uniform random code: n-2 fair bits drawn from 64-bit words of `rng`.
template <class Rng>
TreeCode random_code(int n, Rng& rng) {
    static_assert(std::uniform_random_bit_generator<Rng>);
    static_assert(Rng::min() == 0 && Rng::max() == ~std::uint64_t{0}, "needs a full 64-bit generator");
    TreeCode code(n);
    for (std::size_t i = 0; i < code.words().size(); ++i) code.set_word(i, rng());
    return code;
}

/// Uniform tree permutation of length n.
template <class Rng>
Permutation sample_tree(int n, Rng& rng) {
    return decode(random_code(n, rng));
}

}  // namespace permtree
