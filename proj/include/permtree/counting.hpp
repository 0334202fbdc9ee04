#pragma once

// Exact counts of forest, tree and indecomposable permutations, and the
// brute-force census over S_n that checks them.

#include <map>
#include <string>

#include "permtree/bigint.hpp"

namespace permtree {

/// f(n, m): forest permutations of [n] whose graph has m trees. 1 <= m <= n.
BigInt forest_count(int n, int m);

/// f_n from f_n = 3 f_{n-1} - f_{n-2}, f_1 = 1, f_2 = 2.
BigInt forest_total(int n);

/// f_n from the closed form with sqrt(5), in double precision.
double forest_total_closed_form(int n);

/// Indecomposable permutations of [n] via n! - f(n) = sum_{i<n} (n-i)! f(i).
BigInt indecomposable_count(int n);

/// [y^n] T(y)^m with T(y) = y + y^2/(1-2y), by series multiplication.
BigInt forest_count_series(int n, int m);

struct CensusTable {
    int n = 0;
    BigInt total = 0;
    BigInt connected = 0;
    BigInt trees = 0;
    /// forests[m]: permutations whose graph is a forest with m trees.
    std::map<int, BigInt> forests;

    BigInt forest_total() const;
};

inline constexpr int kDefaultCensusCap = 9;

/// Classifies every permutation of [n]. Work is split by leading letter across
/// `workers` threads; tallies are exact. Throws CapExceeded for n > cap.
CensusTable census(int n, int cap = kDefaultCensusCap, int workers = 1);

}  // namespace permtree
