#pragma once

// gamma(T): the minimum number of vertices meeting every edge of a
// permutation tree. The marking algorithm and the caterpillar closed form are
// cross-checked by an exact tree DP.

#include <cstdint>
#include <vector>

#include "permtree/permutation.hpp"
#include "permtree/stats.hpp"
#include "permtree/tree_codec.hpp"

namespace permtree {

struct CoverResult {
    /// Sorted vertex values.
    std::vector<Letter> chosen;
    /// Vertices marked in the first round (neighbors of the leaves), sorted.
    std::vector<Letter> s1;

    int size() const { return static_cast<int>(chosen.size()); }
};

/// Repeatedly marks (simultaneously) the neighbors of the leaves of every
/// component with >= 3 vertices and deletes the edges at marked vertices; then
/// marks the smaller vertex of each remaining edge. Works on any forest.
CoverResult marking_algorithm(const PermGraph& graph);
CoverResult marking_algorithm(const Permutation& perm);

/// True iff every edge of `graph` has an endpoint in `chosen`.
bool covers_every_edge(const PermGraph& graph, const std::vector<Letter>& chosen);

/// Spine endpoints plus spine vertices of degree >= 3, in spine order.
std::vector<Letter> first_round_set(const Permutation& perm);

/// k + sum floor(n_i / 2) over the gaps of degree-2 spine vertices between
/// consecutive first-round vertices. n >= 1.
std::int64_t gamma_formula(const Permutation& perm);

/// Exact minimum by two-state DP on the inversion graph (any forest).
std::int64_t min_cover_oracle(const PermGraph& graph);
std::int64_t min_cover_oracle(const Permutation& perm);

struct GammaDecomposition {
    /// sum_{i >= 2} Y_i
    std::int64_t sum_y_ge2 = 0;
    /// sum_{k >= 2} floor(k/2) Z*_k
    std::int64_t weighted_z = 0;
    /// sum_{k >= 1} ceil(k/2) (1[A_k] + 1[B_k]); for all-heads tosses (the
    /// path P_n, where the other terms vanish) it is floor(n/2).
    std::int64_t boundary = 0;
    /// gamma_formula(decode(code)).
    std::int64_t gamma = 0;

    std::int64_t total() const { return sum_y_ge2 + weighted_z + boundary; }
    bool holds() const { return total() == gamma; }
};

/// Splits gamma of decode(code) into coin-sequence terms. n >= 4.
GammaDecomposition gamma_decomposition(const TreeCode& code);

/// Leading-order moments: mean n/3 (O(1) remainder), variance 13n/50.
Moments gamma_theory(int n);

}  // namespace permtree
