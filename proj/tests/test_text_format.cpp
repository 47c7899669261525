#include <gtest/gtest.h>

#include <sstream>

#include "mvcomm/instances.hpp"
#include "mvcomm/text_format.hpp"

using namespace mvcomm;

namespace {

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

TEST(TextFormat, GraphRoundTrip) {
  const Graph g(5, {{0, 1}, {3, 4}, {1, 4}});
  std::stringstream ss;
  write_graph(ss, g);
  EXPECT_EQ(ss.str(), "5 3\n0 1\n1 4\n3 4\n");
  EXPECT_EQ(read_graph(ss), g);
}

TEST(TextFormat, GraphParseErrors) {
  std::istringstream loop("3 1\n1 1\n");
  EXPECT_EQ(code_of([&] { read_graph(loop); }), ErrorCode::ParseError);
  std::istringstream range("3 1\n0 3\n");
  EXPECT_EQ(code_of([&] { read_graph(range); }), ErrorCode::ParseError);
  std::istringstream truncated("3 2\n0 1\n");
  EXPECT_EQ(code_of([&] { read_graph(truncated); }), ErrorCode::ParseError);
  std::istringstream junk("3 x\n");
  EXPECT_EQ(code_of([&] { read_graph(junk); }), ErrorCode::ParseError);
}

TEST(TextFormat, DistributionRoundTrip) {
  Rng rng(1);
  const GraphDistribution d = random_distribution(6, 4, 0.4, rng);
  std::stringstream ss;
  write_distribution(ss, d);
  const GraphDistribution back = read_distribution(ss);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back.support()[i].graph, d.support()[i].graph);
    EXPECT_EQ(back.support()[i].probability, d.support()[i].probability);
  }
}

TEST(TextFormat, DistributionMustSumToOne) {
  std::istringstream in("dist 2 2\n0.5\n2 0\n0.4\n2 1\n0 1\n");
  EXPECT_EQ(code_of([&] { read_distribution(in); }), ErrorCode::InvalidDistribution);
}

TEST(TextFormat, GameSpecRoundTrip) {
  MvcGameSpec spec{Graph(3, {{0, 1}}), 0.75, 0.1, 1.0, {Graph(3, {{1, 2}}), Graph(3, {{0, 2}})}};
  std::stringstream ss;
  write_game_spec(ss, spec);
  EXPECT_EQ(ss.str().rfind("game 0.75 0.1 1\n", 0), 0U);
  const MvcGameSpec back = read_game_spec(ss);
  EXPECT_EQ(back.e_a, spec.e_a);
  EXPECT_EQ(back.beta, spec.beta);
  EXPECT_EQ(back.eps, spec.eps);
  EXPECT_EQ(back.o, spec.o);
  EXPECT_EQ(back.adversary_candidates, spec.adversary_candidates);
}

TEST(TextFormat, PartitionedRoundTrip) {
  const PartitionedInstance inst = random_partitioned_instance(9, 0.4, 3, 5);
  std::stringstream ss;
  write_partitioned(ss, inst);
  EXPECT_EQ(ss.str().rfind("kparts 3 9\n", 0), 0U);
  const PartitionedInstance back = read_partitioned(ss);
  EXPECT_EQ(back.n, 9);
  EXPECT_EQ(back.parts, inst.parts);
}

TEST(TextFormat, PartitionedPartSizeMismatch) {
  std::istringstream in("kparts 2 3\n3 0\n4 0\n");
  EXPECT_THROW(read_partitioned(in), Error);
}

TEST(TextFormat, CandidatesRoundTrip) {
  const std::vector<Graph> cands{Graph(4, {{0, 1}}), Graph(4), Graph(4, {{2, 3}, {1, 2}})};
  std::stringstream ss;
  write_candidates(ss, cands);
  EXPECT_EQ(read_candidates(ss), cands);
}

TEST(TextFormat, RealsRoundTripExactly) {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, 123456.789, 0.30000000000000004}) EXPECT_EQ(std::stod(format_real(x)), x);
}

TEST(TextFormat, MissingFile) {
  EXPECT_THROW(load_graph("/nonexistent/graph.txt"), Error);
}
