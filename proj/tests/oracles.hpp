// Independent reference computations for the unit tests. Nothing here calls
// into the library's numerics; they are deliberately naive.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Smallest root of eta = exp(-lambda (1 - eta)) by plain iteration from 0.
inline double extinction_by_iteration(double lambda) {
    long double eta = 0.0L;
    for (int i = 0; i < 2'000'000; ++i) {
        const long double next = std::exp(-static_cast<long double>(lambda) * (1.0L - eta));
        if (next == eta) break;
        eta = next;
    }
    return static_cast<double>(eta);
}

// E[(1 + Poi(lambda))^{-2}] by a long-double Poisson sum (pmf from logs).
inline double r_by_poisson_sum(double lambda) {
    long double sum = 0.0L;
    const long double l = lambda;
    for (int k = 0; k < 2000; ++k) {
        const long double logp = -l + k * std::log(l) - std::lgamma(static_cast<long double>(k) + 1.0L);
        sum += std::exp(logp) / ((k + 1.0L) * (k + 1.0L));
    }
    return static_cast<double>(sum);
}

inline double binom_pmf_lgamma(int m, int k, double p) {
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == m ? 1.0 : 0.0;
    const long double lp = std::lgamma(m + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(m - k + 1.0L) +
                           k * std::log(static_cast<long double>(p)) +
                           (m - k) * std::log1p(-static_cast<long double>(p));
    return static_cast<double>(std::exp(lp));
}

// E[g(Bin(m, p))] by direct summation.
inline double binom_expect(int m, double p, const std::function<double(int)>& g) {
    long double s = 0.0L;
    for (int k = 0; k <= m; ++k) s += static_cast<long double>(binom_pmf_lgamma(m, k, p)) * g(k);
    return static_cast<double>(s);
}

// Adjacency matrix for a small graph on vertices 0..n-1; vertex 0 plays "1".
struct Small {
    int n;
    std::vector<std::vector<int>> a;
    int deg(int v) const {
        int d = 0;
        for (int u = 0; u < n; ++u) d += a[v][u];
        return d;
    }
    std::vector<int> comp_of(int s) const {
        std::vector<int> seen(n, 0), stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u)
                if (a[v][u] && !seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        return seen;
    }
};

// Visits every graph on n vertices with its G(n, p) probability.
inline void for_each_graph(int n, double p, const std::function<void(const Small&, double)>& fn) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const int m = static_cast<int>(pairs.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Small g{n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
        double w = 1.0;
        for (int e = 0; e < m; ++e) {
            const bool on = mask >> e & 1u;
            w *= on ? p : 1.0 - p;
            if (on) g.a[pairs[e].first][pairs[e].second] = g.a[pairs[e].second][pairs[e].first] = 1;
        }
        fn(g, w);
    }
}

// Return-time distribution of the walk from vertex 0 by propagating mass for
// `horizon` steps; returns {E tau, E tau^2} (truncation error is geometric).
inline std::pair<double, double> return_moments_by_propagation(const Small& g, int horizon = 4000) {
    if (g.deg(0) == 0) return {1.0, 1.0};
    std::vector<long double> mass(g.n, 0.0L), next(g.n);
    long double e1 = 0.0L, e2 = 0.0L;
    for (int u = 0; u < g.n; ++u)
        if (g.a[0][u]) mass[u] = 1.0L / g.deg(0);
    for (int t = 2; t <= horizon; ++t) {
        std::fill(next.begin(), next.end(), 0.0L);
        long double back = 0.0L;
        for (int v = 1; v < g.n; ++v) {
            if (mass[v] == 0.0L) continue;
            const long double share = mass[v] / g.deg(v);
            for (int u = 0; u < g.n; ++u)
                if (g.a[v][u]) {
                    if (u == 0)
                        back += share;
                    else
                        next[u] += share;
                }
        }
        e1 += back * t;
        e2 += back * t * t;
        mass.swap(next);
    }
    return {static_cast<double>(e1), static_cast<double>(e2)};
}

// 2 |E(C(0))| / d(0) counted straight from the adjacency matrix.
inline double return_mean_by_counting(const Small& g) {
    const int d = g.deg(0);
    if (d == 0) return 1.0;
    const auto c = g.comp_of(0);
    int half_edges = 0;
    for (int v = 0; v < g.n; ++v)
        if (c[v]) half_edges += g.deg(v);
    return static_cast<double>(half_edges) / d;
}

} // namespace oracle
