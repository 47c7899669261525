#include <gtest/gtest.h>

#include "mvcomm/distribution.hpp"
#include "mvcomm/instances.hpp"
#include "support/oracles.hpp"

using namespace mvcomm;

namespace {

Graph edge(int n, int u, int v) { return Graph(n, {{u, v}}); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::NotFound;
}

}  // namespace

TEST(GraphDistribution, Validation) {
  EXPECT_EQ(code_of([] { GraphDistribution(3, {}); }), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code_of([] { GraphDistribution(3, {{Graph(3), 0.5}, {Graph(3), 0.4}}); }), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code_of([] { GraphDistribution(3, {{Graph(3), 1.5}, {Graph(3), -0.5}}); }), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code_of([] { GraphDistribution(3, {{Graph(4), 1.0}}); }), ErrorCode::DimensionMismatch);
  EXPECT_NO_THROW(GraphDistribution(3, {{Graph(3), 0.3}, {Graph(3), 0.7}}));
}

TEST(CoverProbabilities, Examples) {
  const Graph e_a = edge(3, 0, 1);
  EXPECT_EQ(cover_probabilities(e_a, GraphDistribution::point_mass(edge(3, 1, 2))).c, (std::vector<double>{0, 1, 0}));
  EXPECT_EQ(cover_probabilities(edge(2, 0, 1), GraphDistribution::point_mass(Graph(2))).c, (std::vector<double>{1, 0}));
  const GraphDistribution mix(3, {{edge(3, 1, 2), 0.5}, {Graph(3), 0.5}});
  EXPECT_EQ(cover_probabilities(e_a, mix).c, (std::vector<double>{0.5, 0.5, 0}));
  EXPECT_EQ(code_of([&] { cover_probabilities(edge(4, 0, 1), mix); }), ErrorCode::DimensionMismatch);
}

TEST(WeightsFromProbs, Examples) {
  EXPECT_DOUBLE_EQ(weights_from_probs({{1.0}}, 1.0)[0], 0.0);
  EXPECT_DOUBLE_EQ(weights_from_probs({{0.0}}, 0.3)[0], 1.0);
  EXPECT_DOUBLE_EQ(weights_from_probs({{0.5}}, 0.5)[0], 0.25);
  EXPECT_EQ(code_of([] { weights_from_probs({{0.5}}, 0.0); }), ErrorCode::ParamOutOfRange);
  EXPECT_EQ(code_of([] { weights_from_probs({{0.5}}, 1.01); }), ErrorCode::ParamOutOfRange);
}

TEST(ExpectedMvcSize, Examples) {
  EXPECT_DOUBLE_EQ(expected_mvc_size(edge(2, 0, 1), GraphDistribution::point_mass(Graph(2))), 1.0);
  const GraphDistribution mix(3, {{edge(3, 1, 2), 0.5}, {Graph(3), 0.5}});
  EXPECT_DOUBLE_EQ(expected_mvc_size(edge(3, 0, 1), mix), 1.0);
  EXPECT_DOUBLE_EQ(expected_mvc_size(edge(3, 0, 1), GraphDistribution::point_mass(Graph(3, {{1, 2}, {0, 2}}))), 2.0);
}

TEST(CoverProbabilities, Properties) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 8));
    const Graph e_a = random_graph(n, 0.3, rng);
    const GraphDistribution d = random_distribution(n, 1 + static_cast<int>(uniform_below(rng, 6)), 0.3, rng);
    const CoverProbabilities c = cover_probabilities(e_a, d);
    double brute = 0.0;
    for (const WeightedGraph& wg : d.support()) brute += wg.probability * oracle::mvc_size(graph_union(e_a, wg.graph));
    EXPECT_NEAR(c.sum(), brute, 1e-12);
    EXPECT_NEAR(c.sum(), expected_mvc_size(e_a, d), 1e-12);
    const double beta = 0.01 + 0.99 * uniform01(rng);
    const WeightVector w = weights_from_probs(c, beta);
    for (int v = 0; v < n; ++v) {
      EXPECT_GE(c.c[v], 0.0);
      EXPECT_LE(c.c[v], 1.0);
      EXPECT_GE(w[v], beta - 1.0 - 1e-15);
      EXPECT_LE(w[v], 1.0);
    }
  }
}

TEST(CoverProbabilities, PointMassIsIndicator) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const Graph e_a = random_graph(8, 0.3, rng);
    const CoverProbabilities c = cover_probabilities(e_a, GraphDistribution::point_mass(random_graph(8, 0.3, rng)));
    for (double x : c.c) EXPECT_TRUE(x == 0.0 || x == 1.0);
  }
}
