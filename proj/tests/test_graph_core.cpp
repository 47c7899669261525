#include <gtest/gtest.h>

#include <algorithm>

#include "mvcomm/instances.hpp"
#include "mvcomm/vertex_cover.hpp"
#include "support/oracles.hpp"

using namespace mvcomm;

namespace {

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

std::vector<Graph> random_graphs(int count, int max_n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph> out;
  for (int t = 0; t < count; ++t) {
    const int n = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_n)));
    out.push_back(random_graph(n, 0.1 + 0.7 * uniform01(rng), rng));
  }
  return out;
}

}  // namespace

TEST(VertexSet, BasicOperations) {
  VertexSet s{1, 3, 5};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  s.insert(2);
  s.erase(5);
  EXPECT_EQ(s.members(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ((VertexSet{1, 2} | VertexSet{2, 4}), (VertexSet{1, 2, 4}));
  EXPECT_EQ((VertexSet{1, 2} & VertexSet{2, 4}), (VertexSet{2}));
  EXPECT_EQ((VertexSet{1, 2} - VertexSet{2, 4}), (VertexSet{1}));
  EXPECT_TRUE((VertexSet{1}).subset_of(VertexSet{1, 2}));
  EXPECT_EQ(VertexSet::all(4).size(), 4);
}

TEST(VertexSet, LexicographicOrder) {
  EXPECT_TRUE(lex_less(VertexSet{0, 5}, VertexSet{1, 2}));
  EXPECT_TRUE(lex_less(VertexSet{0, 2}, VertexSet{0, 3}));
  EXPECT_TRUE(lex_less(VertexSet{0}, VertexSet{0, 1}));
  EXPECT_FALSE(lex_less(VertexSet{0, 1}, VertexSet{0, 1}));
}

TEST(Graph, NormalizesAndDeduplicates) {
  const Graph g(4, {{2, 1}, {1, 2}, {0, 3}});
  ASSERT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges()[0], (Edge{0, 3}));
  EXPECT_EQ(g.edges()[1], (Edge{1, 2}));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.degree(1), 1);
}

TEST(Graph, RejectsSelfLoopsAndOutOfRange) {
  try {
    Graph(3, {{1, 1}});
    FAIL() << "self-loop accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidGraph);
  }
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
  EXPECT_THROW(Graph(3, {{-1, 0}}), Error);
}

TEST(ResidualGraph, Examples) {
  EXPECT_FALSE(residual_graph(path3(), VertexSet{1}).has_edges());
  EXPECT_EQ(residual_graph(path3(), VertexSet{}), path3());
  const Graph r = residual_graph(triangle(), VertexSet{0});
  ASSERT_EQ(r.num_edges(), 1);
  EXPECT_EQ(r.edges()[0], (Edge{1, 2}));
}

TEST(ResidualGraph, EveryEdgeTouchesSOrSurvives) {
  Rng rng(11);
  for (const Graph& g : random_graphs(200, 10, 3)) {
    const VertexSet s(rng() & VertexSet::all(g.n()).bits());
    const Graph r = residual_graph(g, s);
    for (const Edge& e : g.edges())
      EXPECT_TRUE(s.contains(e.u) || s.contains(e.v) || r.has_edge(e.u, e.v));
    for (const Edge& e : r.edges()) EXPECT_TRUE(g.has_edge(e.u, e.v));
    EXPECT_LE(mvc_size(r), mvc_size(g));
  }
}

TEST(MvcSize, Examples) {
  EXPECT_EQ(mvc_size(Graph(4)), 0);
  EXPECT_EQ(mvc_size(Graph(2, {{0, 1}})), 1);
  EXPECT_EQ(mvc_size(triangle()), 2);
}

TEST(MvcSize, MatchesExhaustiveSearch) {
  for (const Graph& g : random_graphs(300, 12, 17)) EXPECT_EQ(mvc_size(g), oracle::mvc_size(g));
}

TEST(MvcSize, CyclesAndCompleteGraphs) {
  for (int n = 3; n <= 12; ++n) {
    std::vector<Edge> cycle, complete;
    for (int v = 0; v < n; ++v) cycle.push_back({v, (v + 1) % n});
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) complete.push_back({u, v});
    EXPECT_EQ(mvc_size(Graph(n, cycle)), (n + 1) / 2);
    EXPECT_EQ(mvc_size(Graph(n, complete)), n - 1);
  }
}

TEST(MvcCanonical, Examples) {
  EXPECT_EQ(mvc_canonical(Graph(2, {{0, 1}})), (VertexSet{0}));
  EXPECT_EQ(mvc_canonical(path3()), (VertexSet{1}));
  EXPECT_EQ(mvc_canonical(Graph(4, {{0, 1}, {2, 3}})), (VertexSet{0, 2}));
}

TEST(MvcCanonical, LexicographicallySmallestMinimumCover) {
  for (const Graph& g : random_graphs(200, 10, 23)) {
    const int tau = oracle::mvc_size(g);
    std::uint64_t best = 0;
    bool have = false;
    for (std::uint64_t s : oracle::all_covers(g)) {
      if (std::popcount(s) != tau) continue;
      if (!have || oracle::list_less(s, best)) best = s;
      have = true;
    }
    const VertexSet got = mvc_canonical(g);
    EXPECT_EQ(got.bits(), best);
    EXPECT_EQ(mvc_canonical(g), got);
  }
}

TEST(MinWeightVc, Examples) {
  EXPECT_EQ(min_weight_vc(Graph(2, {{0, 1}}), {0.3, 0.7}), (VertexSet{0}));
  const Graph g(3, {{0, 1}});
  const WeightVector w{1.0, 0.5, -2.0};
  const VertexSet x = min_weight_vc(g, w);
  EXPECT_EQ(x, (VertexSet{1, 2}));
  EXPECT_DOUBLE_EQ(total_weight(x, w), -1.5);
}

TEST(MinWeightVc, UnitWeightsGiveMinimumSize) {
  for (const Graph& g : random_graphs(100, 12, 29)) {
    const VertexSet x = min_weight_vc(g, WeightVector(static_cast<std::size_t>(g.n()), 1.0));
    EXPECT_TRUE(g.is_cover(x));
    EXPECT_EQ(x.size(), mvc_size(g));
  }
}

TEST(MinWeightVc, MatchesExhaustiveSearchWithNegativeWeights) {
  Rng rng(31);
  for (const Graph& g : random_graphs(300, 10, 37)) {
    WeightVector w(static_cast<std::size_t>(g.n()));
    for (double& x : w) x = -0.6 + 1.6 * uniform01(rng);
    const VertexSet x = min_weight_vc(g, w);
    EXPECT_TRUE(g.is_cover(x));
    EXPECT_NEAR(total_weight(x, w), oracle::min_weight(g, w), 1e-9);
    for (int v = 0; v < g.n(); ++v)
      if (w[v] < 0.0) EXPECT_TRUE(x.contains(v));
  }
}

TEST(MinWeightVc, ValidatesWeights) {
  EXPECT_THROW(min_weight_vc(Graph(3, {{0, 1}}), {1.0, 1.0}), Error);
  EXPECT_THROW(min_weight_vc(Graph(2, {{0, 1}}), {1.0, std::nan("")}), Error);
}

TEST(GreedyMatchingCover, Examples) {
  EXPECT_EQ(greedy_matching_cover(path3(), {{0, 1}, {1, 2}}), (VertexSet{0, 1}));
  EXPECT_TRUE(greedy_matching_cover(Graph(5)).empty());
  const LayeredInstance li = layered_instance(2);
  const Graph base = li.instance.base();
  EXPECT_EQ(greedy_matching_cover(base, li.adversarial_order()).size(), 8);
  EXPECT_EQ(mvc_size(base), 4);
}

TEST(GreedyMatchingCover, AtMostTwiceOptimal) {
  Rng rng(41);
  for (const Graph& g : random_graphs(200, 12, 43)) {
    std::vector<Edge> order = g.edges();
    shuffle(order, rng);
    const VertexSet x = greedy_matching_cover(g, order);
    EXPECT_TRUE(g.is_cover(x));
    EXPECT_LE(x.size(), 2 * mvc_size(g));
  }
}

TEST(GreedyMatchingCover, RejectsNonPermutation) {
  EXPECT_THROW(greedy_matching_cover(path3(), {{0, 1}}), Error);
  EXPECT_THROW(greedy_matching_cover(path3(), {{0, 1}, {0, 1}}), Error);
}

TEST(MinimalCovers, Examples) {
  EXPECT_EQ(enumerate_minimal_vertex_covers(Graph(2, {{0, 1}})), (std::vector<VertexSet>{{0}, {1}}));
  EXPECT_EQ(enumerate_minimal_vertex_covers(triangle()), (std::vector<VertexSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(enumerate_minimal_vertex_covers(Graph(3)), (std::vector<VertexSet>{VertexSet{}}));
}

TEST(MinimalCovers, MatchBruteForce) {
  for (const Graph& g : random_graphs(200, 10, 47)) {
    std::vector<std::uint64_t> got;
    for (VertexSet s : enumerate_minimal_vertex_covers(g)) got.push_back(s.bits());
    EXPECT_EQ(got, oracle::minimal_covers(g));
  }
}

TEST(MinimalCovers, CapExceeded) {
  try {
    enumerate_minimal_vertex_covers(Graph(17));
    FAIL() << "cap not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
  EXPECT_NO_THROW(enumerate_minimal_vertex_covers(Graph(17), 20));
}

TEST(GraphOps, UnionDifferenceSubset) {
  const Graph a(4, {{0, 1}, {1, 2}});
  const Graph b(4, {{1, 2}, {2, 3}});
  const Graph u = graph_union(a, b);
  EXPECT_EQ(u.num_edges(), 3);
  EXPECT_EQ(graph_difference(u, a), Graph(4, {{2, 3}}));
  EXPECT_TRUE(edge_subset(a, u));
  EXPECT_FALSE(edge_subset(u, a));
  EXPECT_THROW(graph_union(a, Graph(5)), Error);
}
