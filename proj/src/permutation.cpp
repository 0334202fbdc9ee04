#include "permtree/permutation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "permtree/errors.hpp"

namespace permtree {

Permutation Permutation::identity(int n) {
    std::vector<Letter> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Letter{1});
    return from_trusted(std::move(v));
}

Permutation::Permutation(std::vector<Letter> values) : values_(std::move(values)) {
    const auto n = values_.size();
    if (n == 0) throw InvalidPermutation("permutation must have length >= 1");
    std::vector<bool> seen(n, false);
    for (Letter v : values_) {
        if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)]) {
            throw InvalidPermutation("not a permutation of [" + std::to_string(n) + "]: " + to_string());
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

Permutation::Permutation(std::initializer_list<Letter> values)
    : Permutation(std::vector<Letter>(values)) {}

Permutation Permutation::from_trusted(std::vector<Letter> values) {
    Permutation p;
    p.values_ = std::move(values);
    return p;
}

std::vector<int> Permutation::positions() const {
    std::vector<int> pos(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        pos[static_cast<std::size_t>(values_[i] - 1)] = static_cast<int>(i + 1);
    }
    return pos;
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out << ',';
        out << values_[i];
    }
    out << ')';
    return out.str();
}

PermGraph::PermGraph(int n, std::vector<std::vector<Letter>> adjacency)
    : n_(n), adjacency_(std::move(adjacency)) {
    std::size_t degree_sum = 0;
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
        degree_sum += list.size();
    }
    edges_ = degree_sum / 2;
}

namespace {

// Number of connected components, by iterative DFS.
int count_components(const PermGraph& g) {
    const int n = g.vertex_count();
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    std::vector<Letter> stack;
    int count = 0;
    for (Letter s = 1; s <= n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++count;
        seen[static_cast<std::size_t>(s)] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            Letter u = stack.back();
            stack.pop_back();
            for (Letter v : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return count;
}

}  // namespace

bool PermGraph::is_connected() const { return count_components(*this) == 1; }

bool PermGraph::is_acyclic() const {
    return edges_ + static_cast<std::size_t>(count_components(*this)) == static_cast<std::size_t>(n_);
}

std::vector<Inversion> inversions(const Permutation& perm) {
    // Output-sensitive: for each letter, walk the earlier letters above it.
    std::vector<Inversion> out;
    std::set<Letter> earlier;
    for (Letter v : perm.values()) {
        for (auto it = earlier.upper_bound(v); it != earlier.end(); ++it) {
            out.emplace_back(*it, v);
        }
        earlier.insert(v);
    }
    return out;
}

std::int64_t inversion_count(const Permutation& perm) {
    // Fenwick tree over letters.
    const int n = perm.size();
    std::vector<int> tree(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t count = 0;
    int seen = 0;
    for (Letter v : perm.values()) {
        int le = 0;
        for (int i = v; i > 0; i -= i & -i) le += tree[static_cast<std::size_t>(i)];
        count += seen - le;
        for (int i = v; i <= n; i += i & -i) ++tree[static_cast<std::size_t>(i)];
        ++seen;
    }
    return count;
}

PermGraph build_graph(const Permutation& perm) {
    const int n = perm.size();
    std::vector<std::vector<Letter>> adj(static_cast<std::size_t>(n));
    for (auto [hi, lo] : inversions(perm)) {
        adj[static_cast<std::size_t>(hi - 1)].push_back(lo);
        adj[static_cast<std::size_t>(lo - 1)].push_back(hi);
    }
    return PermGraph(n, std::move(adj));
}

bool is_indecomposable(const Permutation& perm) {
    const auto v = perm.values();
    Letter prefix_max = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        prefix_max = std::max(prefix_max, v[i]);
        if (prefix_max == static_cast<Letter>(i + 1)) return false;
    }
    return true;
}

std::vector<PositionRange> components(const Permutation& perm) {
    std::vector<PositionRange> out;
    const auto v = perm.values();
    Letter prefix_max = 0;
    int start = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        prefix_max = std::max(prefix_max, v[i]);
        const int pos = static_cast<int>(i + 1);
        if (prefix_max == pos) {
            out.push_back({start, pos});
            start = pos + 1;
        }
    }
    return out;
}

PatternFlags pattern_flags(const Permutation& perm) {
    const auto v = perm.values();
    const std::size_t n = v.size();
    PatternFlags flags;
    if (n < 3) return flags;

    // 321: some letter has a larger letter before it and a smaller one after it.
    std::vector<Letter> suffix_min(n + 1, std::numeric_limits<Letter>::max());
    for (std::size_t i = n; i-- > 0;) suffix_min[i] = std::min(suffix_min[i + 1], v[i]);
    Letter prefix_max = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (prefix_max > v[j] && suffix_min[j + 1] < v[j]) {
            flags.has_321 = true;
            break;
        }
        prefix_max = std::max(prefix_max, v[j]);
    }

    if (n < 4) return flags;
    // 3412 at positions a<b<c<d. For each b take the largest earlier letter
    // below w_b; for each c the smallest later letter above w_c. A pattern
    // exists iff some b<c has the former exceeding the latter.
    constexpr Letter none_low = 0;
    constexpr Letter none_high = std::numeric_limits<Letter>::max();
    std::vector<Letter> below_before(n, none_low);
    std::vector<Letter> above_after(n, none_high);
    {
        std::set<Letter> seen;
        for (std::size_t b = 0; b < n; ++b) {
            auto it = seen.lower_bound(v[b]);
            if (it != seen.begin()) below_before[b] = *std::prev(it);
            seen.insert(v[b]);
        }
    }
    {
        std::set<Letter> seen;
        for (std::size_t c = n; c-- > 0;) {
            auto it = seen.upper_bound(v[c]);
            if (it != seen.end()) above_after[c] = *it;
            seen.insert(v[c]);
        }
    }
    Letter best = none_low;
    for (std::size_t c = 1; c < n; ++c) {
        best = std::max(best, below_before[c - 1]);
        if (best != none_low && above_after[c] != none_high && best > above_after[c]) {
            flags.has_3412 = true;
            break;
        }
    }
    return flags;
}

bool is_forest(const Permutation& perm) {
    const auto f = pattern_flags(perm);
    return !f.has_321 && !f.has_3412;
}

bool is_tree(const Permutation& perm) { return is_forest(perm) && is_indecomposable(perm); }

}  // namespace permtree
