#pragma once

// Permutations of [n], their inversion graphs, and the pattern tests that
// characterize forest and tree permutations.
//
// Positions and letters are both 1-based. A permutation stores its one-line
// notation; perm.at(p) is the letter at position p. Graphs are keyed by
// letter (vertex value), never by position.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace permtree {

using Letter = std::int32_t;

class Permutation {
public:
    /// The identity of length n.
    static Permutation identity(int n);

    /// Validates that `values` is a bijection onto {1..n}; throws InvalidPermutation.
    explicit Permutation(std::vector<Letter> values);
    Permutation(std::initializer_list<Letter> values);

    /// Skips validation. Callers guarantee the bijection.
    static Permutation from_trusted(std::vector<Letter> values);

    int size() const { return static_cast<int>(values_.size()); }

    /// Letter at 1-based position `pos`.
    Letter at(int pos) const { return values_[static_cast<std::size_t>(pos - 1)]; }
    Letter first() const { return values_.front(); }
    Letter last() const { return values_.back(); }

    /// m(w) = n - w_n.
    int m() const { return size() - last(); }

    std::span<const Letter> values() const { return values_; }

    /// Position of each letter: result[v - 1] is the 1-based position of v.
    std::vector<int> positions() const;

    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    Permutation() = default;
    std::vector<Letter> values_;
};

/// Inversion graph G_w: vertices {1..n}, one edge per inversion.
class PermGraph {
public:
    PermGraph(int n, std::vector<std::vector<Letter>> adjacency);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_; }

    /// Sorted neighbor list of vertex v (1-based value).
    std::span<const Letter> neighbors(Letter v) const {
        return adjacency_[static_cast<std::size_t>(v - 1)];
    }
    int degree(Letter v) const { return static_cast<int>(neighbors(v).size()); }

    bool is_connected() const;
    bool is_acyclic() const;

private:
    int n_ = 0;
    std::size_t edges_ = 0;
    std::vector<std::vector<Letter>> adjacency_;
};

/// Inversion as (larger letter, smaller letter), the larger one earlier in w.
using Inversion = std::pair<Letter, Letter>;

/// All inversions in order of the later position, then increasing earlier letter.
std::vector<Inversion> inversions(const Permutation& perm);

std::int64_t inversion_count(const Permutation& perm);

PermGraph build_graph(const Permutation& perm);

/// True iff no proper prefix {w_1..w_m} equals {1..m}.
bool is_indecomposable(const Permutation& perm);

/// Closed 1-based position interval.
struct PositionRange {
    int first;
    int last;
    int length() const { return last - first + 1; }
    friend bool operator==(const PositionRange&, const PositionRange&) = default;
};

/// Maximal position intervals, one per connected component of G_w.
std::vector<PositionRange> components(const Permutation& perm);

struct PatternFlags {
    bool has_321 = false;
    bool has_3412 = false;
    friend bool operator==(const PatternFlags&, const PatternFlags&) = default;
};

PatternFlags pattern_flags(const Permutation& perm);

/// G_w acyclic: avoids both 321 and 3412.
bool is_forest(const Permutation& perm);

/// G_w a tree: forest and indecomposable.
bool is_tree(const Permutation& perm);

}  // namespace permtree
