#pragma once

// Scalar statistics of permutation trees, the coupled coin-toss sequence, and
// the closed-form laws for them.
//
// A code of length n-2 is read as a 0-1 sequence y. Its blocks (maximal runs)
// are in one-to-one correspondence with the non-leaves of the tree, a block
// of size k giving a vertex of degree k+1. The same y is produced by a first
// symbol followed by n-3 coin tosses: T repeats the previous symbol, H flips
// it.

#include <cstdint>
#include <string>
#include <vector>

#include "permtree/permutation.hpp"
#include "permtree/tree_codec.hpp"

namespace permtree {

/// Dense row-major square matrix.
struct Matrix {
    int rows = 0;
    std::vector<double> data;

    explicit Matrix(int n = 0) : rows(n), data(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}
    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i * rows + j)]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i * rows + j)]; }
};

struct DegreeCensus {
    int n = 0;
    /// counts[k] = D_k, number of vertices of degree k.
    std::vector<std::int64_t> counts;

    std::int64_t operator[](int k) const {
        return k >= 0 && k < static_cast<int>(counts.size()) ? counts[static_cast<std::size_t>(k)] : 0;
    }
    int max_degree() const;
    static DegreeCensus from_degrees(const std::vector<int>& degrees);
};

struct TreeStats {
    int leaves = 0;
    /// n - leaves + 1.
    int diameter = 0;
    /// Longest path by double BFS on the inversion graph; -1 when not computed.
    int diameter_bfs = -1;
    int max_degree = 0;
    DegreeCensus census;
};

/// Statistics of a tree permutation (n >= 2). With verify_with_bfs the
/// diameter is also measured on the inversion graph and a disagreement throws
/// std::logic_error.
TreeStats tree_stats(const Permutation& perm, bool verify_with_bfs = true);

/// Longest path length in a connected acyclic graph.
int tree_diameter_bfs(const PermGraph& graph);

struct CoinSequence {
    /// true = H.
    std::vector<bool> heads;
    bool first_symbol = false;

    /// Parses "THHT..." (case-insensitive).
    static CoinSequence parse(const std::string& tosses, bool first_symbol);
    /// Tosses coupled to the bits of a code (n >= 3).
    static CoinSequence from_code(const TreeCode& code);

    int length() const { return static_cast<int>(heads.size()); }
    std::vector<bool> coupled() const;
    std::string to_string() const;
};

struct CoinStats {
    /// Index k holds the count for k; out-of-range lookups read 0.
    std::vector<std::int64_t> blocks_of_size;  // Y_k
    std::vector<std::int64_t> y_star;          // Y*_k: HT^{k-1}H, k >= 1
    std::vector<std::int64_t> z_star;          // Z*_k: TH^{k+1}T, k >= 0
    int longest_tail_run = 0;
    int block_count = 0;   // Y
    int first_block = 0;   // b_1
    int last_block = 0;    // b_l
    /// k such that the tosses start with H^k T (0 if they start with T or hold no T).
    int leading_heads = 0;
    /// k such that the tosses end with T H^k (0 if they end with T or hold no T).
    int trailing_heads = 0;
    /// At least one toss and no T.
    bool all_heads = false;

    std::int64_t y(int k) const { return lookup(blocks_of_size, k); }
    std::int64_t ystar(int k) const { return lookup(y_star, k); }
    std::int64_t zstar(int k) const { return lookup(z_star, k); }

private:
    static std::int64_t lookup(const std::vector<std::int64_t>& v, int k) {
        return k >= 0 && k < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(k)] : 0;
    }
};

CoinStats coin_stats(const CoinSequence& seq);

/// Y_k minus the first/last block indicators (a lone block counted once).
std::int64_t y_star_from_blocks(const CoinStats& s, int k);

/// Checks D_1 = n - Y and D_{k+1} = Y_k for decode(code), degrees taken from
/// the inversion graph. Needs n >= 3.
bool coupled_tree_stats_equivalence(const TreeCode& code);

/// P(L_n = leaves) under 2 + Bin(n-3, 1/2); n >= 3.
double leaves_pmf(int n, int leaves);
/// P(diam = d) = leaves_pmf(n, n - d + 1).
double diameter_pmf(int n, int diameter);

/// exp(-2^(-k+1+frac)), frac the fractional part of log2(n-3): the limit law
/// of P(H_n - floor(log2(n-3)) < k). Asymptotic; carries an o(1) error. n >= 4.
double maxdeg_cdf_approx(int n, int k);

/// floor(log2(n-3)), the centering of H_n.
int maxdeg_centering(int n);

struct Moments {
    double mean = 0;
    double variance = 0;
};

/// E Y*_k = (n-k-3) 2^-(k+1), exact; variance is the leading term
/// sigma_{k,k} n = (2^(k+1) + 3 - 2k) n / 2^(2k+2), off by O(k 2^-k). n >= k+4.
Moments y_star_moments(int n, int k);

/// Exact variance of Y*_k over the n-3 tosses. n >= k+4.
double y_star_variance_exact(int n, int k);

/// Exact E Y_k (blocks of size k in the length n-2 sequence). n >= 3, k >= 1.
double block_count_mean(int n, int k);

/// Exact E D_k. n >= 3, k >= 1.
double degree_count_mean(int n, int k);

/// Limit covariance entry of (Y*_i, Y*_j)/sqrt(n). i, j >= 1.
double sigma_entry(int i, int j);

/// m x m northwest corner of A Sigma A^T, the limit covariance of
/// (D_1..D_m)/sqrt(n). Infinite sums truncated at index m + 64.
Matrix degree_cov(int m);

/// Mean and variance of the number of runs R_n in n iid Geom(1-q) values.
/// Throws InvalidArgument for q outside (0,1) or n < 1.
Moments geometric_runs(int n, double q);

}  // namespace permtree
