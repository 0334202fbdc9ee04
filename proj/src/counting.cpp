#include "permtree/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "permtree/errors.hpp"
#include "permtree/permutation.hpp"

namespace permtree {

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt c = 1;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

BigInt forest_count(int n, int m) {
    if (m < 1 || m > n) throw InvalidArgument("forest_count needs 1 <= m <= n");
    if (m == n) return 1;
    BigInt sum = 0;
    for (int k = 1; k <= std::min(m, n - m); ++k) {
        sum += binomial(m, k) * binomial(n - m - 1, k - 1) * (BigInt(1) << (n - m - k));
    }
    return sum;
}

BigInt forest_count_series(int n, int m) {
    if (m < 1 || m > n) throw InvalidArgument("forest_count_series needs 1 <= m <= n");
    // T(y) coefficients: t_1 = 1, t_k = 2^(k-2).
    std::vector<BigInt> t(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) t[static_cast<std::size_t>(k)] = k == 1 ? BigInt(1) : BigInt(1) << (k - 2);
    std::vector<BigInt> power(static_cast<std::size_t>(n) + 1, 0);
    power[0] = 1;
    for (int r = 0; r < m; ++r) {
        std::vector<BigInt> next(static_cast<std::size_t>(n) + 1, 0);
        for (int a = 0; a <= n; ++a) {
            if (power[static_cast<std::size_t>(a)] == 0) continue;
            for (int b = 1; a + b <= n; ++b) {
                next[static_cast<std::size_t>(a + b)] += power[static_cast<std::size_t>(a)] * t[static_cast<std::size_t>(b)];
            }
        }
        power = std::move(next);
    }
    return power[static_cast<std::size_t>(n)];
}

BigInt forest_total(int n) {
    if (n < 1) throw InvalidArgument("forest_total needs n >= 1");
    BigInt prev = 1, cur = 2;
    if (n == 1) return prev;
    for (int k = 3; k <= n; ++k) {
        BigInt next = 3 * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double forest_total_closed_form(int n) {
    if (n < 1) throw InvalidArgument("forest_total_closed_form needs n >= 1");
    const double s5 = std::sqrt(5.0);
    return (s5 - 1) / (2 * s5) * std::pow((3 + s5) / 2, n) + (s5 + 1) / (2 * s5) * std::pow((3 - s5) / 2, n);
}

BigInt indecomposable_count(int n) {
    if (n < 1) throw InvalidArgument("indecomposable_count needs n >= 1");
    std::vector<BigInt> factorial(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k <= n; ++k) factorial[static_cast<std::size_t>(k)] = factorial[static_cast<std::size_t>(k - 1)] * k;
    std::vector<BigInt> f(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) {
        BigInt rest = 0;
        for (int i = 1; i < k; ++i) rest += factorial[static_cast<std::size_t>(k - i)] * f[static_cast<std::size_t>(i)];
        f[static_cast<std::size_t>(k)] = factorial[static_cast<std::size_t>(k)] - rest;
    }
    return f[static_cast<std::size_t>(n)];
}

BigInt CensusTable::forest_total() const {
    BigInt sum = 0;
    for (const auto& [m, c] : forests) sum += c;
    return sum;
}

namespace {

struct Tally {
    std::uint64_t total = 0;
    std::uint64_t connected = 0;
    std::uint64_t trees = 0;
    std::vector<std::uint64_t> forests;  // by component count
};

// All permutations of [n] starting with `lead`, in lexicographic order.
void tally_lead(int n, int lead, Tally& out) {
    std::vector<Letter> w;
    w.reserve(static_cast<std::size_t>(n));
    w.push_back(lead);
    for (Letter v = 1; v <= n; ++v) {
        if (v != lead) w.push_back(v);
    }
    do {
        const auto perm = Permutation::from_trusted(w);
        ++out.total;
        const bool connected = is_indecomposable(perm);
        if (connected) ++out.connected;
        if (is_forest(perm)) {
            const auto parts = components(perm).size();
            ++out.forests[parts];
            if (connected) ++out.trees;
        }
    } while (std::next_permutation(w.begin() + 1, w.end()));
}

}  // namespace

CensusTable census(int n, int cap, int workers) {
    if (n < 1) throw InvalidArgument("census needs n >= 1");
    if (n > cap) throw CapExceeded("census of n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    workers = std::clamp(workers, 1, n);

    std::vector<Tally> tallies(static_cast<std::size_t>(n));
    for (auto& t : tallies) t.forests.assign(static_cast<std::size_t>(n) + 1, 0);
    auto run = [&](int worker) {
        for (int lead = 1 + worker; lead <= n; lead += workers) tally_lead(n, lead, tallies[static_cast<std::size_t>(lead - 1)]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    CensusTable table;
    table.n = n;
    std::vector<std::uint64_t> forests(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : tallies) {
        table.total += t.total;
        table.connected += t.connected;
        table.trees += t.trees;
        for (std::size_t m = 0; m < forests.size(); ++m) forests[m] += t.forests[m];
    }
    for (int m = 1; m <= n; ++m) {
        if (forests[static_cast<std::size_t>(m)] > 0) table.forests[m] = forests[static_cast<std::size_t>(m)];
    }
    return table;
}

}  // namespace permtree
