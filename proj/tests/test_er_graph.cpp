#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "ssrw/er_graph.hpp"
#include "ssrw/parallel.hpp"
#include "ssrw/rng.hpp"

using namespace ssrw;

TEST(Graph, RejectsBadEdges) {
    EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(3, {{1, 4}}), std::invalid_argument);
    EXPECT_THROW(Graph::from_edges(3, {{1, 2}, {2, 1}}), std::invalid_argument);
}

TEST(Graph, AdjacencyFromEdges) {
    const Graph g = Graph::from_edges(4, {{3, 1}, {1, 2}, {2, 3}});
    EXPECT_EQ(g.vertex_count(), 4u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.degree(1), 2u);
    EXPECT_EQ(g.degree(4), 0u);
    const auto nb = g.neighbors(3);
    EXPECT_EQ(std::vector<Vertex>(nb.begin(), nb.end()), (std::vector<Vertex>{1, 2}));
}

TEST(Sampler, RejectsBadProbability) {
    auto rng = make_rng(1, 0, 0);
    EXPECT_THROW(sample_er(10, -0.1, rng), std::domain_error);
    EXPECT_THROW(sample_er(10, 1.5, rng), std::domain_error);
    EXPECT_THROW(sample_er(0, 0.5, rng), std::domain_error);
}

TEST(Sampler, ExtremeProbabilities) {
    for (auto method : {SamplingMethod::skip, SamplingMethod::dense}) {
        auto rng = make_rng(2, 0, 0);
        EXPECT_EQ(sample_er(40, 0.0, rng, method).edge_count(), 0u);
        const Graph full = sample_er(40, 1.0, rng, method);
        EXPECT_EQ(full.edge_count(), 40u * 39u / 2u);
        for (Vertex v = 1; v <= 40; ++v) EXPECT_EQ(full.degree(v), 39u);
    }
    auto rng = make_rng(3, 0, 0);
    EXPECT_EQ(sample_er(1, 0.7, rng).edge_count(), 0u);
}

TEST(Sampler, DegreeSumIsTwiceEdgeCount) {
    for (double p : {0.01, 0.1, 0.5}) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            auto rng = make_rng(4, 0, i);
            const Graph g = sample_er(200, p, rng);
            std::uint64_t sum = 0;
            for (Vertex v = 1; v <= g.vertex_count(); ++v) sum += g.degree(v);
            EXPECT_EQ(sum, 2 * g.edge_count());
        }
    }
}

TEST(Sampler, NoLoopsOrDuplicates) {
    auto rng = make_rng(5, 0, 0);
    for (auto method : {SamplingMethod::skip, SamplingMethod::dense}) {
        const Graph g = sample_er(300, 0.05, rng, method);
        for (Vertex v = 1; v <= g.vertex_count(); ++v) {
            const auto nb = g.neighbors(v);
            EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
            EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
            EXPECT_EQ(std::count(nb.begin(), nb.end(), v), 0);
        }
    }
}

TEST(Sampler, SameSeedSameGraph) {
    auto a = make_rng(6, 1, 2), b = make_rng(6, 1, 2);
    const Graph g = sample_er(500, 0.01, a), h = sample_er(500, 0.01, b);
    ASSERT_EQ(g.edge_count(), h.edge_count());
    for (Vertex v = 1; v <= 500; ++v) {
        const auto x = g.neighbors(v), y = h.neighbors(v);
        EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
    }
}

// Each of the 1225 pairs at n = 50 should appear Binomial(reps, p) times for
// both samplers; Pearson statistic against the chi-square 0.999 quantile.
TEST(Sampler, PairFrequenciesAreUniform) {
    const Vertex n = 50;
    const double p = 0.1;
    const std::uint64_t reps = 4000;
    const std::size_t pairs = n * (n - 1) / 2;
    for (auto method : {SamplingMethod::skip, SamplingMethod::dense}) {
        std::vector<double> count(pairs, 0.0);
        double edges = 0.0;
        for (std::uint64_t r = 0; r < reps; ++r) {
            auto rng = make_rng(7, static_cast<std::uint64_t>(method), r);
            const Graph g = sample_er(n, p, rng, method);
            edges += static_cast<double>(g.edge_count());
            for (const auto& e : g.edges()) count[(e.v - 1) * (e.v - 2) / 2 + (e.u - 1)] += 1.0;
        }
        const double expected = reps * p;
        double chi2 = 0.0;
        for (double c : count) chi2 += (c - expected) * (c - expected) / (expected * (1.0 - p));
        const boost::math::chi_squared dist(static_cast<double>(pairs));
        EXPECT_LT(chi2, boost::math::quantile(dist, 0.999)) << "method " << static_cast<int>(method);
        EXPECT_GT(chi2, boost::math::quantile(dist, 0.001)) << "method " << static_cast<int>(method);
        const double mean_edges = edges / reps;
        const double sd = std::sqrt(pairs * p * (1 - p) / reps);
        EXPECT_NEAR(mean_edges, pairs * p, 4 * sd);
    }
}

TEST(Components, KnownGraph) {
    // {1,2,3} path, {4,5} edge, {6} isolated, {7,8,9,10} star
    const Graph g = Graph::from_edges(10, {{1, 2}, {2, 3}, {4, 5}, {7, 8}, {7, 9}, {7, 10}});
    const auto cs = components(g);
    EXPECT_EQ(cs.sizes.size(), 4u);
    EXPECT_EQ(cs.max_size(), 4u);
    EXPECT_EQ(cs.component_of(1), cs.component_of(3));
    EXPECT_NE(cs.component_of(1), cs.component_of(4));
    EXPECT_EQ(cs.max_component_id, cs.component_of(7));
    const auto s1 = component_stats_of_1(g, cs);
    EXPECT_EQ(s1.size, 3u);
    EXPECT_EQ(s1.internal_edges, 2u);
    EXPECT_EQ(s1.degree, 1u);
    EXPECT_FALSE(s1.in_max);
    const auto direct = component_of_1(g);
    EXPECT_EQ(direct.size, 3u);
    EXPECT_EQ(direct.internal_edges, 2u);
}

TEST(Components, SizesSumToN) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        auto rng = make_rng(8, 0, i);
        const Graph g = sample_er(1000, 1.5 / 1000, rng);
        const auto cs = components(g);
        EXPECT_EQ(std::accumulate(cs.sizes.begin(), cs.sizes.end(), std::uint64_t{0}), 1000u);
        const auto s1 = component_stats_of_1(g, cs);
        const auto direct = component_of_1(g);
        EXPECT_EQ(s1.size, direct.size);
        EXPECT_EQ(s1.internal_edges, direct.internal_edges);
    }
}

// Relabeling vertices by a permutation keeps the multiset of component sizes.
TEST(Components, RelabelInvariance) {
    auto rng = make_rng(9, 0, 0);
    const Graph g = sample_er(400, 1.2 / 400, rng);
    std::vector<Vertex> perm(400);
    std::iota(perm.begin(), perm.end(), 1u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> relabeled;
    for (const auto& e : g.edges()) relabeled.push_back({perm[e.u - 1], perm[e.v - 1]});
    const Graph h = Graph::from_edges(400, relabeled);
    auto a = components(g).sizes, b = components(h).sizes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
}

TEST(Rng, DerivedSeedsDiffer) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, 7, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(derive_seed(42, 1, 0), derive_seed(42, 2, 0));
    EXPECT_EQ(derive_seed(42, 1, 5), derive_seed(42, 1, 5));
}

TEST(Rng, UniformBelowStaysInRange) {
    auto rng = make_rng(10, 0, 0);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto x = uniform_below(rng, 7);
        ASSERT_LT(x, 7u);
        ++hist[x];
    }
    for (int c : hist) EXPECT_NEAR(c, 10000, 400);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng), v = uniform01_open_left(rng);
        EXPECT_TRUE(u >= 0.0 && u < 1.0);
        EXPECT_TRUE(v > 0.0 && v <= 1.0);
    }
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
    auto work = [](std::size_t i) {
        auto rng = make_rng(11, 0, i);
        return uniform01(rng);
    };
    EXPECT_EQ(parallel_map(257, 1, work), parallel_map(257, 4, work));
}

TEST(Parallel, PropagatesExceptions) {
    auto boom = [](std::size_t i) -> int {
        if (i == 13) throw std::runtime_error("boom");
        return 0;
    };
    EXPECT_THROW(parallel_map(50, 3, boom), std::runtime_error);
    EXPECT_THROW(parallel_map(50, 1, boom), std::runtime_error);
}
