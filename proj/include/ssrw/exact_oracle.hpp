// exact_oracle.hpp — exhaustive enumeration of G(n, p) for n <= 6.
//
// Every edge configuration is visited once and weighted by
// p^{#present} (1-p)^{#absent}. Per-graph return-time moments come from the
// hitting-time linear systems on C(1), independently of the 2|E|/d(1) formula.
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ssrw/branching.hpp"
#include "ssrw/csv.hpp"
#include "ssrw/parallel.hpp"

namespace ssrw {

inline constexpr unsigned kOracleMaxN = 6;
inline constexpr unsigned kOracleSlowMaxN = 7;

struct OracleReport {
    unsigned n = 0;
    double p = 0.0;
    double e_tau = 0.0;                 // E_{n,p}[tau]
    double e_tau_sq = 0.0;              // E_{n,p}[tau^2], joint graph/walk law
    double term_a = 0.0;                // E[d(2) 1{d(1)>=1}/d(1)]
    double term_b = 0.0;                // E[1{2 not in C(1)} d(2) 1{d(1)>=1}/d(1)]
    double term_b_conditional = 0.0;    // term_b / P(2 not in C(1)), 0 when that is 0
    double term_b_component = 0.0;      // p E[1{d(1)>=1}/d(1) (n-1-|C1|)(n-|C1|)/(n-1)]
    double p_2_notin_c1 = 0.0;
    std::array<double, 3> c1_moments{}; // E|C(1)|^k, k = 1..3

    static constexpr const char* csv_header =
        "n,p,exact_E_tau,E_tau_sq,term_a,term_b,term_b_conditional,term_b_component,"
        "p_2_notin_C1,E_C1,E_C1_sq,E_C1_cube";

    void write_csv_row(std::ostream& os) const {
        os << n << ',' << fmt_double(p) << ',' << fmt_double(e_tau) << ',' << fmt_double(e_tau_sq) << ','
           << fmt_double(term_a) << ',' << fmt_double(term_b) << ',' << fmt_double(term_b_conditional) << ','
           << fmt_double(term_b_component) << ',' << fmt_double(p_2_notin_c1) << ','
           << fmt_double(c1_moments[0]) << ',' << fmt_double(c1_moments[1]) << ',' << fmt_double(c1_moments[2])
           << '\n';
    }
};

namespace detail {

struct SmallGraph {
    unsigned n;
    std::array<std::uint8_t, kOracleSlowMaxN> adj{};  // bit j set: edge to vertex j (0-based)

    unsigned degree(unsigned v) const { return static_cast<unsigned>(std::popcount(adj[v])); }

    std::uint8_t component_of_0() const {
        std::uint8_t seen = 1, frontier = 1;
        while (frontier) {
            std::uint8_t next = 0;
            for (unsigned v = 0; v < n; ++v)
                if (frontier & (1u << v)) next |= adj[v];
            frontier = next & static_cast<std::uint8_t>(~seen);
            seen |= next;
        }
        return seen;
    }
};

struct ReturnMomentsExact {
    double tau;
    double tau_sq;
};

// Hitting times h and second moments s of vertex 0 from the other vertices of
// its component: h = 1 + P h, s = 1 + 2 P h + P s (with h(0) = s(0) = 0).
inline ReturnMomentsExact return_moments(const SmallGraph& g, std::uint8_t comp) {
    const unsigned d0 = g.degree(0);
    if (d0 == 0) return {1.0, 1.0};
    std::array<int, kOracleSlowMaxN> index{};
    std::vector<unsigned> members;
    for (unsigned v = 1; v < g.n; ++v) {
        if (comp & (1u << v)) {
            index[v] = static_cast<int>(members.size());
            members.push_back(v);
        }
    }
    const auto k = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const unsigned v = members[static_cast<std::size_t>(r)];
        const double w = 1.0 / g.degree(v);
        for (unsigned u = 1; u < g.n; ++u)
            if (g.adj[v] & (1u << u)) a(r, index[u]) -= w;
    }
    const auto lu = a.partialPivLu();
    const Eigen::VectorXd h = lu.solve(Eigen::VectorXd::Ones(k));
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const unsigned v = members[static_cast<std::size_t>(r)];
        double avg_h = 0.0;
        for (unsigned u = 1; u < g.n; ++u)
            if (g.adj[v] & (1u << u)) avg_h += h(index[u]);
        rhs(r) += 2.0 * avg_h / g.degree(v);
    }
    const Eigen::VectorXd s = lu.solve(rhs);
    double avg_h = 0.0, avg_s = 0.0;
    for (unsigned u = 1; u < g.n; ++u) {
        if (g.adj[0] & (1u << u)) {
            avg_h += h(index[u]);
            avg_s += s(index[u]);
        }
    }
    avg_h /= d0;
    avg_s /= d0;
    return {1.0 + avg_h, 1.0 + 2.0 * avg_h + avg_s};
}

struct OracleSums {
    double e_tau = 0, e_tau_sq = 0, term_a = 0, term_b = 0, term_b_component = 0, p_2_notin_c1 = 0;
    std::array<double, 3> c1{};
};

} // namespace detail

/// Exact expectations over all 2^{C(n,2)} graphs. n = 7 is refused unless
/// `allow_slow` is set.
inline OracleReport enumerate(unsigned n, double p, bool allow_slow = false, unsigned threads = 1) {
    if (n < 2) throw std::domain_error("oracle needs n >= 2");
    if (n > (allow_slow ? kOracleSlowMaxN : kOracleMaxN))
        throw std::domain_error("oracle refuses n = " + std::to_string(n) + " (ceiling is 6; 7 needs the slow flag)");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability must lie in [0, 1]");

    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned u = 0; u < n; ++u)
        for (unsigned v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const auto m = static_cast<unsigned>(pairs.size());
    std::vector<double> weight_by_count(m + 1);
    for (unsigned k = 0; k <= m; ++k) weight_by_count[k] = std::pow(p, k) * std::pow(1.0 - p, m - k);

    const std::uint64_t configs = std::uint64_t{1} << m;
    constexpr std::uint64_t chunks = 64;
    const double nd = n;
    const auto partial = parallel_map(chunks, threads, [&](std::size_t c) {
        detail::OracleSums acc;
        const std::uint64_t lo = configs * c / chunks, hi = configs * (c + 1) / chunks;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            const double w = weight_by_count[static_cast<unsigned>(std::popcount(mask))];
            if (w == 0.0) continue;
            detail::SmallGraph g{n};
            for (unsigned e = 0; e < m; ++e) {
                if (mask >> e & 1u) {
                    g.adj[pairs[e].first] |= static_cast<std::uint8_t>(1u << pairs[e].second);
                    g.adj[pairs[e].second] |= static_cast<std::uint8_t>(1u << pairs[e].first);
                }
            }
            const auto comp = g.component_of_0();
            const auto c1 = static_cast<double>(std::popcount(comp));
            const unsigned d1 = g.degree(0);
            const double inv_d1 = d1 ? 1.0 / d1 : 0.0;
            const auto moments = detail::return_moments(g, comp);
            const bool two_out = !(comp & 0b10u);
            const double a = g.degree(1) * inv_d1;
            acc.e_tau += w * moments.tau;
            acc.e_tau_sq += w * moments.tau_sq;
            acc.term_a += w * a;
            if (two_out) {
                acc.term_b += w * a;
                acc.p_2_notin_c1 += w;
            }
            acc.term_b_component += w * inv_d1 * (nd - 1.0 - c1) * (nd - c1) / (nd - 1.0);
            acc.c1[0] += w * c1;
            acc.c1[1] += w * c1 * c1;
            acc.c1[2] += w * c1 * c1 * c1;
        }
        return acc;
    });

    OracleReport r;
    r.n = n;
    r.p = p;
    for (const auto& s : partial) {
        r.e_tau += s.e_tau;
        r.e_tau_sq += s.e_tau_sq;
        r.term_a += s.term_a;
        r.term_b += s.term_b;
        r.term_b_component += s.term_b_component;
        r.p_2_notin_c1 += s.p_2_notin_c1;
        for (int k = 0; k < 3; ++k) r.c1_moments[k] += s.c1[k];
    }
    r.term_b_component *= p;
    r.term_b_conditional = r.p_2_notin_c1 > 0.0 ? r.term_b / r.p_2_notin_c1 : 0.0;
    return r;
}

/// max(|(E tau - 1)/(n-1) - (term_a - term_b)|, |term_a - term_a_closed_form|).
inline double decomposition_residual(unsigned n, double p) {
    if (n < 4) throw std::domain_error("decomposition needs n >= 4");
    const auto r = enumerate(n, p);
    const double decomposition = std::abs((r.e_tau - 1.0) / (n - 1.0) - (r.term_a - r.term_b));
    const double closed = std::abs(r.term_a - term_a_closed_form(n, p));
    return std::max(decomposition, closed);
}

/// Component form of the disconnected-pair term, evaluated by enumeration.
inline double term_b_component_form(unsigned n, double p) {
    if (n < 4) throw std::domain_error("component form needs n >= 4");
    return enumerate(n, p).term_b_component;
}

} // namespace ssrw
