// walk.hpp — simple symmetric random walk from vertex 1 and its first return time.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ssrw/er_graph.hpp"
#include "ssrw/parallel.hpp"
#include "ssrw/rng.hpp"

namespace ssrw {

inline constexpr std::uint64_t kDefaultStepsCap = 10'000'000;

struct ReturnSample {
    std::uint64_t tau = 1;
    bool censored = false;
    std::uint64_t steps_cap = kDefaultStepsCap;
};

/// Walk from vertex 1 until it first comes back. An isolated vertex 1 returns
/// tau = 1 without moving. Hitting `steps_cap` reports tau = steps_cap, censored.
inline ReturnSample simulate_return(const Graph& g, Rng& rng,
                                    std::uint64_t steps_cap = kDefaultStepsCap) {
    if (steps_cap < 1) throw std::invalid_argument("steps_cap must be >= 1");
    ReturnSample out{1, false, steps_cap};
    if (g.degree(1) == 0) return out;
    Vertex at = 1;
    for (std::uint64_t t = 1;; ++t) {
        const auto nb = g.neighbors(at);
        at = nb[uniform_below(rng, nb.size())];
        if (at == 1) {
            out.tau = t;
            return out;
        }
        if (t == steps_cap) {
            out.tau = steps_cap;
            out.censored = true;
            return out;
        }
    }
}

/// E_g[tau] = 2|E(C(1))| / d(1), or 1 when vertex 1 is isolated.
inline double exact_expected_return(const Graph& g) {
    const auto d1 = g.degree(1);
    if (d1 == 0) return 1.0;
    const auto c1 = component_of_1(g);
    return 2.0 * static_cast<double>(c1.internal_edges) / static_cast<double>(d1);
}

struct MeanEstimate {
    double mean = 0.0;
    double second_moment = 0.0;
    double std_error = 0.0;
};

inline MeanEstimate summarize(const std::vector<double>& values) {
    MeanEstimate est;
    if (values.empty()) return est;
    const auto count = static_cast<double>(values.size());
    double sum = 0.0, sum_sq = 0.0;
    for (double v : values) {
        sum += v;
        sum_sq += v * v;
    }
    est.mean = sum / count;
    est.second_moment = sum_sq / count;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    return est;
}

/// Stream tags keep different estimators on decorrelated seed streams.
namespace stream {
inline constexpr std::uint64_t expected_return = 0x45524554;   // "ERET"
inline constexpr std::uint64_t tau_moments = 0x54414d4f;       // "TAMO"
inline constexpr std::uint64_t state_process = 0x53544154;     // "STAT"
inline constexpr std::uint64_t structure = 0x53545255;         // "STRU"
} // namespace stream

/// Graph-level Monte Carlo for E_{n,p}[tau]: averages the exact per-graph
/// expectation over `reps` fresh graphs. Replication i uses the generator
/// derive_seed(seed, tag, i), so the result does not depend on `threads`.
inline MeanEstimate mc_expected_return(Vertex n, double p, std::uint64_t reps, std::uint64_t seed,
                                       unsigned threads = 1) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    detail::check_probability(p);
    const auto values = parallel_map(reps, threads, [&](std::size_t i) {
        auto rng = make_rng(seed, stream::expected_return, i);
        return exact_expected_return(sample_er(n, p, rng));
    });
    return summarize(values);
}

struct TauMoments {
    double e_tau = 0.0;
    double e_tau_sq = 0.0;
    double se_tau = 0.0;
    double se_tau_sq = 0.0;
    std::uint64_t censor_count = 0;
};

/// Nested simulation of the joint (graph, walk) law: `walks_per_graph`
/// independent returns on each of `reps_graphs` graphs.
inline TauMoments estimate_tau_moments(Vertex n, double p, std::uint64_t reps_graphs,
                                       std::uint64_t walks_per_graph, std::uint64_t seed,
                                       std::uint64_t steps_cap = kDefaultStepsCap,
                                       unsigned threads = 1) {
    if (reps_graphs < 1 || walks_per_graph < 1)
        throw std::invalid_argument("reps_graphs and walks_per_graph must be >= 1");
    detail::check_probability(p);
    struct PerGraph {
        double tau = 0, tau_sq = 0;
        std::uint64_t censored = 0;
    };
    const auto per_graph = parallel_map(reps_graphs, threads, [&](std::size_t i) {
        auto rng = make_rng(seed, stream::tau_moments, i);
        const Graph g = sample_er(n, p, rng);
        PerGraph acc;
        for (std::uint64_t w = 0; w < walks_per_graph; ++w) {
            const auto r = simulate_return(g, rng, steps_cap);
            const auto t = static_cast<double>(r.tau);
            acc.tau += t;
            acc.tau_sq += t * t;
            acc.censored += r.censored ? 1 : 0;
        }
        acc.tau /= static_cast<double>(walks_per_graph);
        acc.tau_sq /= static_cast<double>(walks_per_graph);
        return acc;
    });
    std::vector<double> tau(reps_graphs), tau_sq(reps_graphs);
    TauMoments out;
    for (std::size_t i = 0; i < reps_graphs; ++i) {
        tau[i] = per_graph[i].tau;
        tau_sq[i] = per_graph[i].tau_sq;
        out.censor_count += per_graph[i].censored;
    }
    // Graph-level averages are i.i.d. across graphs, so their spread gives the SE.
    const auto m1 = summarize(tau);
    const auto m2 = summarize(tau_sq);
    out.e_tau = m1.mean;
    out.se_tau = m1.std_error;
    out.e_tau_sq = m2.mean;
    out.se_tau_sq = m2.std_error;
    return out;
}

} // namespace ssrw
