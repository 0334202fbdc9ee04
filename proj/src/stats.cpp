#include "permtree/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "permtree/errors.hpp"
#include "permtree/structure.hpp"

namespace permtree {

int DegreeCensus::max_degree() const {
    for (int k = static_cast<int>(counts.size()) - 1; k >= 0; --k) {
        if (counts[static_cast<std::size_t>(k)] > 0) return k;
    }
    return 0;
}

DegreeCensus DegreeCensus::from_degrees(const std::vector<int>& degrees) {
    DegreeCensus c;
    c.n = static_cast<int>(degrees.size());
    int top = 0;
    for (int d : degrees) top = std::max(top, d);
    c.counts.assign(static_cast<std::size_t>(top) + 1, 0);
    for (int d : degrees) ++c.counts[static_cast<std::size_t>(d)];
    return c;
}

namespace {

// Farthest vertex from `from` and its distance.
std::pair<Letter, int> farthest(const PermGraph& g, Letter from) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
    std::vector<Letter> queue{from};
    dist[static_cast<std::size_t>(from)] = 0;
    std::pair<Letter, int> best{from, 0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Letter u = queue[head];
        const int du = dist[static_cast<std::size_t>(u)];
        if (du > best.second) best = {u, du};
        for (Letter v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return best;
}

}  // namespace

int tree_diameter_bfs(const PermGraph& graph) {
    if (graph.vertex_count() <= 1) return 0;
    const auto [end, _] = farthest(graph, 1);
    return farthest(graph, end).second;
}

TreeStats tree_stats(const Permutation& perm, bool verify_with_bfs) {
    const int n = perm.size();
    if (n < 2) throw TooSmall("tree_stats needs n >= 2");
    TreeStats s;
    s.census = DegreeCensus::from_degrees(degree_sequence(perm));
    s.leaves = static_cast<int>(s.census[1]);
    s.diameter = n - s.leaves + 1;
    s.max_degree = s.census.max_degree();
    if (verify_with_bfs) {
        s.diameter_bfs = tree_diameter_bfs(build_graph(perm));
        if (s.diameter_bfs != s.diameter) {
            throw std::logic_error("diameter mismatch on " + perm.to_string() + ": formula " +
                                   std::to_string(s.diameter) + ", bfs " + std::to_string(s.diameter_bfs));
        }
    }
    return s;
}

CoinSequence CoinSequence::parse(const std::string& tosses, bool first_symbol) {
    CoinSequence seq;
    seq.first_symbol = first_symbol;
    seq.heads.reserve(tosses.size());
    for (char c : tosses) {
        const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (u == 'H') seq.heads.push_back(true);
        else if (u == 'T') seq.heads.push_back(false);
        else throw InvalidArgument(std::string("toss must be H or T, got '") + c + "'");
    }
    return seq;
}

CoinSequence CoinSequence::from_code(const TreeCode& code) {
    if (code.n() < 3) throw TooSmall("coin sequence needs n >= 3");
    CoinSequence seq;
    seq.first_symbol = code.bit(0);
    seq.heads.reserve(static_cast<std::size_t>(code.length() - 1));
    for (int j = 1; j < code.length(); ++j) seq.heads.push_back(code.bit(j) != code.bit(j - 1));
    return seq;
}

std::vector<bool> CoinSequence::coupled() const {
    std::vector<bool> y;
    y.reserve(heads.size() + 1);
    y.push_back(first_symbol);
    for (bool h : heads) y.push_back(h ? !y.back() : y.back());
    return y;
}

std::string CoinSequence::to_string() const {
    std::string out;
    for (bool h : heads) out.push_back(h ? 'H' : 'T');
    return out;
}

CoinStats coin_stats(const CoinSequence& seq) {
    const int len = seq.length();
    CoinStats s;
    s.blocks_of_size.assign(static_cast<std::size_t>(len) + 2, 0);
    s.y_star.assign(static_cast<std::size_t>(len) + 1, 0);
    s.z_star.assign(static_cast<std::size_t>(len) + 1, 0);

    // Blocks of y: each H closes the current block.
    int block = 1;
    int tail_run = 0;
    int last_head = -1;
    int last_tail = -1;
    for (int i = 0; i < len; ++i) {
        if (seq.heads[static_cast<std::size_t>(i)]) {
            if (s.block_count == 0) s.first_block = block;
            ++s.blocks_of_size[static_cast<std::size_t>(block)];
            ++s.block_count;
            block = 1;
            tail_run = 0;
            // HT^{k-1}H: consecutive heads k apart.
            if (last_head >= 0) ++s.y_star[static_cast<std::size_t>(i - last_head)];
            last_head = i;
        } else {
            ++block;
            ++tail_run;
            s.longest_tail_run = std::max(s.longest_tail_run, tail_run);
            // TH^{k+1}T: consecutive tails i' < i with only heads between, k = i - i' - 2.
            if (last_tail >= 0 && i - last_tail >= 2) ++s.z_star[static_cast<std::size_t>(i - last_tail - 2)];
            last_tail = i;
        }
    }
    if (s.block_count == 0) s.first_block = block;
    ++s.blocks_of_size[static_cast<std::size_t>(block)];
    ++s.block_count;
    s.last_block = block;

    s.all_heads = len > 0 && last_tail < 0;
    if (len > 0 && !s.all_heads) {
        int k = 0;
        while (seq.heads[static_cast<std::size_t>(k)]) ++k;
        s.leading_heads = k;
        k = 0;
        while (seq.heads[static_cast<std::size_t>(len - 1 - k)]) ++k;
        s.trailing_heads = k;
    }
    return s;
}

std::int64_t y_star_from_blocks(const CoinStats& s, int k) {
    std::int64_t v = s.y(k);
    if (s.first_block == k) --v;
    if (s.block_count > 1 && s.last_block == k) --v;
    return v;
}

bool coupled_tree_stats_equivalence(const TreeCode& code) {
    const int n = code.n();
    if (n < 3) throw TooSmall("coupling needs n >= 3");
    const auto graph = build_graph(decode(code));
    std::vector<int> degrees;
    degrees.reserve(static_cast<std::size_t>(n));
    for (Letter v = 1; v <= n; ++v) degrees.push_back(graph.degree(v));
    const auto census = DegreeCensus::from_degrees(degrees);
    const auto coins = coin_stats(CoinSequence::from_code(code));

    if (census[1] != n - coins.block_count) return false;
    if (census[0] != 0) return false;
    const int top = std::max(census.max_degree(), static_cast<int>(coins.blocks_of_size.size()));
    for (int k = 1; k <= top; ++k) {
        if (census[k + 1] != coins.y(k)) return false;
    }
    return true;
}

double leaves_pmf(int n, int leaves) {
    if (n < 3) throw InvalidArgument("leaves_pmf needs n >= 3");
    const int trials = n - 3;
    const int successes = leaves - 2;
    if (successes < 0 || successes > trials) return 0.0;
    if (trials <= 62) {
        unsigned __int128 c = 1;
        for (int i = 0; i < successes; ++i) c = c * static_cast<unsigned>(trials - i) / static_cast<unsigned>(i + 1);
        return std::ldexp(static_cast<double>(c), -trials);
    }
    // C(trials, successes) 2^-trials in log space to survive large n.
    const double log_p = std::lgamma(trials + 1.0) - std::lgamma(successes + 1.0) -
                         std::lgamma(trials - successes + 1.0) - trials * std::log(2.0);
    return std::exp(log_p);
}

double diameter_pmf(int n, int diameter) { return leaves_pmf(n, n - diameter + 1); }

int maxdeg_centering(int n) {
    if (n < 4) throw InvalidArgument("max degree law needs n >= 4");
    int c = 0;
    for (int x = n - 3; x > 1; x >>= 1) ++c;
    return c;
}

double maxdeg_cdf_approx(int n, int k) {
    const int centering = maxdeg_centering(n);
    const double frac = std::log2(static_cast<double>(n - 3)) - centering;
    return std::exp(-std::exp2(-k + 1 + frac));
}

Moments y_star_moments(int n, int k) {
    if (k < 1 || n < k + 4) throw InvalidArgument("y_star_moments needs k >= 1 and n >= k + 4");
    return {(n - k - 3) * std::exp2(-(k + 1)), sigma_entry(k, k) * n};
}

double y_star_variance_exact(int n, int k) {
    if (k < 1 || n < k + 4) throw InvalidArgument("y_star_variance_exact needs k >= 1 and n >= k + 4");
    const long windows = n - 3 - k;
    const double p = std::exp2(-(k + 1));
    double var = static_cast<double>(windows) * p * (1 - p);
    // Windows l apart: overlapping at l < k is impossible, l = k shares one H.
    for (long l = 1; l <= k && l < windows; ++l) {
        const double cov = l < k ? -p * p : p * p;
        var += 2.0 * static_cast<double>(windows - l) * cov;
    }
    return var;
}

double block_count_mean(int n, int k) {
    if (n < 3 || k < 1) throw InvalidArgument("block_count_mean needs n >= 3, k >= 1");
    const int len = n - 2;
    const int tosses = n - 3;
    if (k > len) return 0.0;
    if (k == len) return std::exp2(-tosses);
    // interior HT^{k-1}H windows, plus a first and a last block of size k
    return (tosses - k) * std::exp2(-(k + 1)) + 2.0 * std::exp2(-k);
}

double degree_count_mean(int n, int k) {
    if (n < 3 || k < 1) throw InvalidArgument("degree_count_mean needs n >= 3, k >= 1");
    if (k == 1) return (n + 1) / 2.0;
    return block_count_mean(n, k - 1);
}

double sigma_entry(int i, int j) {
    if (i < 1 || j < 1) throw InvalidArgument("sigma_entry needs i, j >= 1");
    if (i == j) return std::exp2(-(i + 1)) * (1.0 - (2.0 * i - 3.0) * std::exp2(-(i + 1)));
    return -(i + j - 3.0) * std::exp2(-(i + j + 2));
}

Matrix degree_cov(int m) {
    if (m < 1) throw InvalidArgument("degree_cov needs m >= 1");
    const int cap = m + 64;
    Matrix out(m);
    // Row 1 of A sums every Y*, row k+1 picks Y*_k.
    double total = 0;
    std::vector<double> column_sum(static_cast<std::size_t>(m), 0.0);
    for (int i = 1; i <= cap; ++i) {
        for (int j = 1; j <= cap; ++j) {
            const double s = sigma_entry(i, j);
            total += s;
            if (j < m) column_sum[static_cast<std::size_t>(j)] += s;
        }
    }
    out(0, 0) = total;
    for (int b = 1; b < m; ++b) {
        out(0, b) = out(b, 0) = -column_sum[static_cast<std::size_t>(b)];
        for (int a = 1; a < m; ++a) out(a, b) = sigma_entry(a, b);
    }
    return out;
}

Moments geometric_runs(int n, double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("geometric_runs needs 0 < q < 1");
    if (n < 1) throw InvalidArgument("geometric_runs needs n >= 1");
    Moments m;
    m.mean = 2 * q / (1 + q) * n + (1 - q) / (1 + q);
    if (n == 1) return m;
    // R_n = 1 + sum of n-1 identically distributed 1-dependent change indicators.
    const double var_change = 2 * q * (1 - q) / ((1 + q) * (1 + q));
    const double cov_adjacent = q * std::pow(1 - q, 3) / ((1 + q) * (1 + q) * (1 - q * q * q));
    m.variance = (n - 1) * var_change + 2.0 * (n - 2) * cov_adjacent;
    return m;
}

}  // namespace permtree
