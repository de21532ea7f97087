// er_graph.hpp — Erdős–Rényi sampling and component structure.
//
// Vertices carry 1-based labels 1..n; vertex 1 is the walk origin everywhere
// in the library. Adjacency is stored in CSR form with sorted neighbor lists.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssrw/rng.hpp"

namespace ssrw {

using Vertex = std::uint32_t;

/// Undirected edge with u < v.
struct Edge {
    Vertex u;
    Vertex v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
public:
    Graph() = default;

    /// Build from an arbitrary edge list. Orientation is normalized; self-loops,
    /// duplicates and out-of-range labels are rejected.
    static Graph from_edges(Vertex n, std::vector<Edge> edges) {
        if (n < 1) throw std::domain_error("graph needs at least one vertex");
        for (auto& e : edges) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
            if (e.u < 1 || e.v > n) throw std::invalid_argument("edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return a.v != b.v ? a.v < b.v : a.u < b.u;
        });
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("duplicate edge");
        return from_row_ordered(n, edges);
    }

    /// Edges must be ordered by (larger endpoint, smaller endpoint); this is
    /// the order both samplers emit, and it leaves every neighbor list sorted.
    static Graph from_row_ordered(Vertex n, std::span<const Edge> edges) {
        Graph g;
        g.n_ = n;
        g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& e : edges) {
            ++g.offsets_[e.u];
            ++g.offsets_[e.v];
        }
        for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
        g.adj_.resize(2 * edges.size());
        std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& e : edges) {
            g.adj_[fill[e.u - 1]++] = e.v;
            g.adj_[fill[e.v - 1]++] = e.u;
        }
        return g;
    }

    Vertex vertex_count() const noexcept { return n_; }
    std::uint64_t edge_count() const noexcept { return adj_.size() / 2; }

    std::uint32_t degree(Vertex v) const {
        return static_cast<std::uint32_t>(offsets_[v] - offsets_[v - 1]);
    }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v - 1], adj_.data() + offsets_[v]};
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (Vertex u = 1; u <= n_; ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.push_back({u, v});
        return out;
    }

    /// Debug dump: one "u,v" line per edge, u < v.
    void write_edge_list(std::ostream& os) const {
        for (const auto& e : edges()) os << e.u << ',' << e.v << '\n';
    }

private:
    Vertex n_ = 0;
    std::vector<std::uint64_t> offsets_;  // offsets_[v-1]..offsets_[v] index adj_
    std::vector<Vertex> adj_;
};

enum class SamplingMethod { automatic, skip, dense };

/// Above this edge probability the pair-by-pair sampler is used.
inline constexpr double kSkipSamplingMaxP = 0.1;

namespace detail {

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("edge probability must lie in [0, 1], got " + std::to_string(p));
}

// Geometric jumps over the pair sequence (2,1), (3,1), (3,2), (4,1), ...
inline void skip_sample(Vertex n, double p, Rng& rng, std::vector<Edge>& edges) {
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double jump = std::floor(std::log(uniform01_open_left(rng)) / log_q);
        if (jump > 0x1.0p62) break;
        w += 1 + static_cast<std::int64_t>(jump);
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn) edges.push_back({static_cast<Vertex>(w + 1), static_cast<Vertex>(v + 1)});
    }
}

inline void dense_sample(Vertex n, double p, Rng& rng, std::vector<Edge>& edges) {
    const Bernoulli coin(p);
    for (Vertex v = 2; v <= n; ++v)
        for (Vertex u = 1; u < v; ++u)
            if (coin(rng)) edges.push_back({u, v});
}

} // namespace detail

/// Sample G(n, p). The result is a deterministic function of (n, p, rng state).
inline Graph sample_er(Vertex n, double p, Rng& rng,
                       SamplingMethod method = SamplingMethod::automatic) {
    if (n < 1) throw std::domain_error("graph needs at least one vertex");
    detail::check_probability(p);
    std::vector<Edge> edges;
    if (p > 0.0 && n > 1) {
        const double pairs = 0.5 * n * (n - 1.0);
        edges.reserve(static_cast<std::size_t>(pairs * p + 4.0 * std::sqrt(pairs * p) + 8.0));
        if (method == SamplingMethod::automatic)
            method = p <= kSkipSamplingMaxP ? SamplingMethod::skip : SamplingMethod::dense;
        if (method == SamplingMethod::skip && p < 1.0)
            detail::skip_sample(n, p, rng, edges);
        else
            detail::dense_sample(n, p, rng, edges);
    }
    return Graph::from_row_ordered(n, edges);
}

struct ComponentSummary {
    std::vector<std::uint32_t> component_id;  // component_id[v - 1] labels vertex v
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint64_t> internal_edges;
    std::uint32_t max_component_id = 0;

    std::uint32_t component_of(Vertex v) const { return component_id[v - 1]; }
    std::uint32_t max_size() const { return sizes[max_component_id]; }
};

/// Components numbered in order of their smallest vertex; iterative BFS.
inline ComponentSummary components(const Graph& g) {
    const Vertex n = g.vertex_count();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    ComponentSummary cs;
    cs.component_id.assign(n, unset);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (Vertex s = 1; s <= n; ++s) {
        if (cs.component_id[s - 1] != unset) continue;
        const auto id = static_cast<std::uint32_t>(cs.sizes.size());
        queue.clear();
        queue.push_back(s);
        cs.component_id[s - 1] = id;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (Vertex w : g.neighbors(queue[head])) {
                if (cs.component_id[w - 1] == unset) {
                    cs.component_id[w - 1] = id;
                    queue.push_back(w);
                }
            }
        }
        cs.sizes.push_back(static_cast<std::uint32_t>(queue.size()));
    }
    cs.internal_edges.assign(cs.sizes.size(), 0);
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v) ++cs.internal_edges[cs.component_id[u - 1]];
    cs.max_component_id = static_cast<std::uint32_t>(
        std::max_element(cs.sizes.begin(), cs.sizes.end()) - cs.sizes.begin());
    return cs;
}

struct Component1Stats {
    std::uint32_t size = 1;            // |C(1)|
    std::uint64_t internal_edges = 0;  // |E(C(1))|
    std::uint32_t degree = 0;          // d(1)
    bool in_max = true;                // |C(1)| == |C_max|
};

inline Component1Stats component_stats_of_1(const Graph& g, const ComponentSummary& cs) {
    const auto id = cs.component_of(1);
    return {cs.sizes[id], cs.internal_edges[id], g.degree(1), cs.sizes[id] == cs.max_size()};
}

/// |C(1)| and |E(C(1))| by a single traversal from vertex 1; `in_max` is not
/// computed (left true) since it needs the global component structure.
inline Component1Stats component_of_1(const Graph& g) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> queue{1};
    seen[0] = 1;
    std::uint64_t degree_sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto nb = g.neighbors(queue[head]);
        degree_sum += nb.size();
        for (Vertex w : nb) {
            if (!seen[w - 1]) {
                seen[w - 1] = 1;
                queue.push_back(w);
            }
        }
    }
    return {static_cast<std::uint32_t>(queue.size()), degree_sum / 2, g.degree(1), true};
}

} // namespace ssrw
