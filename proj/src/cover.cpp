#include "permtree/cover.hpp"

#include <algorithm>

#include "permtree/errors.hpp"
#include "permtree/structure.hpp"

namespace permtree {

CoverResult marking_algorithm(const PermGraph& graph) {
    const int n = graph.vertex_count();
    const auto idx = [](Letter v) { return static_cast<std::size_t>(v); };
    std::vector<int> deg(idx(n) + 1, 0);
    std::vector<bool> marked(idx(n) + 1, false);
    for (Letter v = 1; v <= n; ++v) deg[idx(v)] = graph.degree(v);

    auto live_neighbor = [&](Letter u) -> Letter {
        for (Letter w : graph.neighbors(u)) {
            if (!marked[idx(w)]) return w;
        }
        return 0;
    };

    CoverResult result;
    std::vector<Letter> candidates;
    candidates.reserve(idx(n));
    for (Letter v = 1; v <= n; ++v) candidates.push_back(v);

    bool first_round = true;
    std::vector<Letter> round;
    std::vector<Letter> touched;
    while (true) {
        // Leaves of components with >= 3 vertices: degree 1 next to degree >= 2.
        round.clear();
        for (Letter u : candidates) {
            if (marked[idx(u)] || deg[idx(u)] != 1) continue;
            const Letter x = live_neighbor(u);
            if (x != 0 && deg[idx(x)] >= 2) round.push_back(x);
        }
        std::sort(round.begin(), round.end());
        round.erase(std::unique(round.begin(), round.end()), round.end());
        if (round.empty()) break;

        for (Letter x : round) marked[idx(x)] = true;
        touched.clear();
        for (Letter x : round) {
            for (Letter w : graph.neighbors(x)) {
                if (marked[idx(w)]) continue;
                --deg[idx(w)];
                touched.push_back(w);
            }
            deg[idx(x)] = 0;
        }
        result.chosen.insert(result.chosen.end(), round.begin(), round.end());
        if (first_round) result.s1 = round;
        first_round = false;
        candidates.swap(touched);
    }

    // Components of size 2: take the smaller endpoint.
    for (Letter v = 1; v <= n; ++v) {
        if (marked[idx(v)] || deg[idx(v)] != 1) continue;
        const Letter w = live_neighbor(v);
        if (v < w) result.chosen.push_back(v);
    }
    std::sort(result.chosen.begin(), result.chosen.end());
    return result;
}

CoverResult marking_algorithm(const Permutation& perm) { return marking_algorithm(build_graph(perm)); }

bool covers_every_edge(const PermGraph& graph, const std::vector<Letter>& chosen) {
    std::vector<bool> in(static_cast<std::size_t>(graph.vertex_count()) + 1, false);
    for (Letter v : chosen) in[static_cast<std::size_t>(v)] = true;
    for (Letter u = 1; u <= graph.vertex_count(); ++u) {
        for (Letter w : graph.neighbors(u)) {
            if (!in[static_cast<std::size_t>(u)] && !in[static_cast<std::size_t>(w)]) return false;
        }
    }
    return true;
}

namespace {

// Spine with the degree of each spine vertex.
struct Spine {
    std::vector<Letter> vertices;
    std::vector<int> degrees;
};

Spine spine_of(const Permutation& perm) {
    const auto bd = blocks(perm);
    const auto deg = degree_sequence(bd);
    const auto pos = perm.positions();
    Spine s;
    s.vertices = central_path(bd).vertices;
    for (Letter v : s.vertices) s.degrees.push_back(deg[static_cast<std::size_t>(pos[static_cast<std::size_t>(v - 1)] - 1)]);
    return s;
}

// Indices into the spine of the first-round vertices.
std::vector<std::size_t> first_round_indices(const Spine& s) {
    std::vector<std::size_t> out;
    const std::size_t len = s.vertices.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (i == 0 || i + 1 == len || s.degrees[i] >= 3) out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<Letter> first_round_set(const Permutation& perm) {
    if (perm.size() < 3) return {};
    const auto s = spine_of(perm);
    std::vector<Letter> out;
    for (auto i : first_round_indices(s)) out.push_back(s.vertices[i]);
    return out;
}

std::int64_t gamma_formula(const Permutation& perm) {
    const int n = perm.size();
    if (n <= 2) return n - 1;
    const auto s = spine_of(perm);
    const auto marks = first_round_indices(s);
    std::int64_t gamma = static_cast<std::int64_t>(marks.size());
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const auto gap = static_cast<std::int64_t>(marks[i + 1] - marks[i] - 1);
        gamma += gap / 2;
    }
    return gamma;
}

std::int64_t min_cover_oracle(const PermGraph& graph) {
    const int n = graph.vertex_count();
    const auto idx = [](Letter v) { return static_cast<std::size_t>(v); };
    // with[v] / without[v]: best cover of v's subtree with / without v.
    std::vector<std::int64_t> with(idx(n) + 1, 0), without(idx(n) + 1, 0);
    std::vector<Letter> parent(idx(n) + 1, 0);
    std::vector<bool> seen(idx(n) + 1, false);
    std::vector<Letter> order, stack;
    std::int64_t total = 0;
    for (Letter root = 1; root <= n; ++root) {
        if (seen[idx(root)]) continue;
        order.clear();
        stack.assign(1, root);
        seen[idx(root)] = true;
        while (!stack.empty()) {
            const Letter u = stack.back();
            stack.pop_back();
            order.push_back(u);
            for (Letter w : graph.neighbors(u)) {
                if (seen[idx(w)]) continue;
                seen[idx(w)] = true;
                parent[idx(w)] = u;
                stack.push_back(w);
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Letter u = *it;
            with[idx(u)] = 1;
            without[idx(u)] = 0;
            for (Letter w : graph.neighbors(u)) {
                if (parent[idx(w)] != u) continue;  // only children
                with[idx(u)] += std::min(with[idx(w)], without[idx(w)]);
                without[idx(u)] += with[idx(w)];
            }
        }
        total += std::min(with[idx(root)], without[idx(root)]);
    }
    return total;
}

std::int64_t min_cover_oracle(const Permutation& perm) { return min_cover_oracle(build_graph(perm)); }

GammaDecomposition gamma_decomposition(const TreeCode& code) {
    const int n = code.n();
    if (n < 4) throw TooSmall("gamma_decomposition needs n >= 4");
    const auto coins = coin_stats(CoinSequence::from_code(code));
    GammaDecomposition d;
    for (int i = 2; i < static_cast<int>(coins.blocks_of_size.size()); ++i) d.sum_y_ge2 += coins.y(i);
    for (int k = 2; k < static_cast<int>(coins.z_star.size()); ++k) d.weighted_z += (k / 2) * coins.zstar(k);
    if (coins.all_heads) {
        d.boundary = n / 2;
    } else {
        d.boundary = (coins.leading_heads + 1) / 2 + (coins.trailing_heads + 1) / 2;
    }
    d.gamma = gamma_formula(decode(code));
    return d;
}

Moments gamma_theory(int n) {
    if (n < 1) throw InvalidArgument("gamma_theory needs n >= 1");
    return {n / 3.0, 13.0 * n / 50.0};
}

}  // namespace permtree
