#include <gtest/gtest.h>

#include "mvcomm/instances.hpp"
#include "mvcomm/vertex_cover.hpp"
#include "support/oracles.hpp"

using namespace mvcomm;

TEST(RandomPartitionedInstance, PartsAreDisjointAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PartitionedInstance a = random_partitioned_instance(12, 0.4, 3, seed);
    const PartitionedInstance b = random_partitioned_instance(12, 0.4, 3, seed);
    ASSERT_EQ(a.k(), 3);
    int total = 0;
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(a.parts[i], b.parts[i]);
      total += a.parts[i].num_edges();
      for (int j = i + 1; j < 3; ++j) EXPECT_EQ(graph_difference(a.parts[i], a.parts[j]), a.parts[i]);
    }
    EXPECT_EQ(a.base().num_edges(), total);
    for (int i = 0; i < 3; ++i) EXPECT_TRUE(edge_subset(a.parts[i], a.base()));
  }
}

TEST(RandomPartitionedInstance, Examples) {
  const PartitionedInstance none = random_partitioned_instance(8, 0.0, 2, 3);
  EXPECT_EQ(mvc_size(none.base()), 0);
  for (int n = 1; n <= 8; ++n) {
    const PartitionedInstance full = random_partitioned_instance(n, 1.0, 1, 3);
    EXPECT_EQ(full.base().num_edges(), n * (n - 1) / 2);
    EXPECT_EQ(oracle::mvc_size(full.base()), n - 1);
  }
  EXPECT_THROW(random_partitioned_instance(5, 1.5, 2, 1), Error);
  EXPECT_THROW(random_partitioned_instance(5, 0.5, 0, 1), Error);
}

TEST(LayeredInstance, Structure) {
  for (int m = 1; m <= 4; ++m) {
    const LayeredInstance li = layered_instance(m);
    const Graph base = li.instance.base();
    EXPECT_EQ(li.instance.n, 4 * m);
    EXPECT_EQ(li.instance.k(), 3);
    EXPECT_EQ(li.instance.parts[0].num_edges(), m);
    EXPECT_EQ(li.instance.parts[1].num_edges(), m);
    EXPECT_EQ(li.instance.parts[2].num_edges(), m * (2 * m - 1));
    EXPECT_TRUE(base.is_cover(li.b | li.c));
    EXPECT_EQ(mvc_size(base), 2 * m);
    if (m <= 3) EXPECT_EQ(oracle::mvc_size(base), 2 * m);
    EXPECT_EQ(greedy_matching_cover(base, li.adversarial_order()).size(), 4 * m);
  }
  EXPECT_THROW(layered_instance(0), Error);
}

TEST(FindRsGraph, SmallCases) {
  const RsGraph tiny = find_rs_graph(2, 2, 1);
  ASSERT_EQ(tiny.matchings.size(), 2U);
  for (const auto& m : tiny.matchings) EXPECT_TRUE(is_induced_matching(tiny.graph, m));

  const RsGraph perfect = find_rs_graph(6, 1, 6);
  EXPECT_EQ(perfect.match_size(), 6);
  EXPECT_TRUE(is_induced_matching(perfect.graph, perfect.matchings[0]));

  try {
    find_rs_graph(4, 1, 5);
    FAIL() << "oversized matching accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

TEST(FindRsGraph, MatchingsAreInducedAndDisjoint) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RsGraph rs = find_rs_graph(8, 4, 3, seed);
    ASSERT_EQ(rs.matchings.size(), 4U);
    std::vector<Edge> all;
    for (const auto& m : rs.matchings) {
      EXPECT_EQ(m.size(), 3U);
      EXPECT_TRUE(is_induced_matching(rs.graph, m));
      for (const Edge& e : m) {
        EXPECT_LT(e.u, 8);
        EXPECT_GE(e.v, 8);
      }
      all.insert(all.end(), m.begin(), m.end());
    }
    EXPECT_EQ(rs.graph.num_edges(), static_cast<int>(all.size()));
  }
}

TEST(IsInducedMatching, DetectsChords) {
  const Graph g(4, {{0, 2}, {1, 3}, {0, 3}});
  EXPECT_FALSE(is_induced_matching(g, {{0, 2}, {1, 3}}));
  EXPECT_TRUE(is_induced_matching(g, {{0, 3}}));
}

TEST(RsLowerBoundInstance, Invariants) {
  const RsGraph rs = find_rs_graph(8, 4, 3, 2);
  const RsInstanceFamily fam{rs, 0.3};
  EXPECT_EQ(fam.sample_size(), 1);
  EXPECT_DOUBLE_EQ(fam.eps1(), 0.5 - 3.0 / 8.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RsLowerBoundInstance li = rs_lower_bound_instance(fam, seed);
    const Graph base = li.instance.base();
    EXPECT_EQ(li.instance.n, fam.num_vertices());
    EXPECT_EQ(li.instance.parts[0].num_edges(), 4 * fam.sample_size());
    EXPECT_EQ(li.instance.parts[1].num_edges(), 2 * (8 - 3));
    EXPECT_TRUE(base.is_cover(li.witness));
    EXPECT_EQ(li.witness.size(), fam.sample_size() + 2 * (8 - 3));
    EXPECT_LE(mvc_size(base), li.witness.size());
    for (std::size_t i = 0; i < li.sampled.size(); ++i)
      for (const Edge& e : li.sampled[i])
        EXPECT_NE(std::find(rs.matchings[i].begin(), rs.matchings[i].end(), e), rs.matchings[i].end());
  }
}

TEST(RandomDistribution, IsValid) {
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const GraphDistribution d = random_distribution(6, 1 + t % 7, 0.3, rng);
    double total = 0.0;
    for (const auto& wg : d.support()) total += wg.probability;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}
