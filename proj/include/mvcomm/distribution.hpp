#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mvcomm/error.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/vertex_cover.hpp"

namespace mvcomm {

inline constexpr double kProbabilitySumTolerance = 1e-12;

struct WeightedGraph {
  Graph graph;
  double probability = 0.0;
};

// Finite-support distribution over graphs on a shared vertex set.
class GraphDistribution {
 public:
  GraphDistribution() = default;
  GraphDistribution(int n, std::vector<WeightedGraph> support) : n_(n), support_(std::move(support)) {
    if (support_.empty()) fail(ErrorCode::InvalidDistribution, "empty support");
    double total = 0.0;
    for (const WeightedGraph& wg : support_) {
      if (wg.graph.n() != n_)
        fail(ErrorCode::DimensionMismatch, "support graph has n=" + std::to_string(wg.graph.n()) +
                                               ", expected " + std::to_string(n_));
      if (!(wg.probability >= 0.0) || !std::isfinite(wg.probability))
        fail(ErrorCode::InvalidDistribution, "negative or non-finite probability");
      total += wg.probability;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance)
      fail(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(total));
  }

  static GraphDistribution point_mass(const Graph& g) { return GraphDistribution(g.n(), {{g, 1.0}}); }

  static GraphDistribution uniform(const std::vector<Graph>& graphs) {
    if (graphs.empty()) fail(ErrorCode::InvalidDistribution, "empty support");
    std::vector<WeightedGraph> support;
    for (const Graph& g : graphs) support.push_back({g, 1.0 / static_cast<double>(graphs.size())});
    return GraphDistribution(graphs.front().n(), std::move(support));
  }

  int n() const { return n_; }
  const std::vector<WeightedGraph>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

 private:
  int n_ = 0;
  std::vector<WeightedGraph> support_;
};

// c_v = Pr[v in canonical MVC(e_a ∪ G_B)], G_B drawn from the distribution.
struct CoverProbabilities {
  std::vector<double> c;

  double sum() const {
    double s = 0.0;
    for (double x : c) s += x;
    return s;
  }
};

inline CoverProbabilities cover_probabilities(const Graph& e_a, const GraphDistribution& d_b) {
  if (e_a.n() != d_b.n())
    fail(ErrorCode::DimensionMismatch, "e_a has n=" + std::to_string(e_a.n()) +
                                           ", distribution has n=" + std::to_string(d_b.n()));
  CoverProbabilities out{std::vector<double>(static_cast<std::size_t>(e_a.n()), 0.0)};
  for (const WeightedGraph& wg : d_b.support()) {
    if (wg.probability == 0.0) continue;
    mvc_canonical(graph_union(e_a, wg.graph)).for_each([&](int v) { out.c[v] += wg.probability; });
  }
  for (double& x : out.c) x = std::min(1.0, x);
  return out;
}

inline void check_beta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    fail(ErrorCode::ParamOutOfRange, "beta=" + std::to_string(beta) + " outside (0, 1]");
}

// w_v = 1 - (2 - beta) c_v
inline WeightVector weights_from_probs(const CoverProbabilities& c, double beta) {
  check_beta(beta);
  WeightVector w(c.c.size());
  for (std::size_t v = 0; v < c.c.size(); ++v) w[v] = 1.0 - (2.0 - beta) * c.c[v];
  return w;
}

inline double expected_mvc_size(const Graph& e_a, const GraphDistribution& d_b) {
  if (e_a.n() != d_b.n()) fail(ErrorCode::DimensionMismatch, "expected_mvc_size: vertex counts differ");
  double total = 0.0;
  for (const WeightedGraph& wg : d_b.support())
    total += wg.probability * mvc_size(graph_union(e_a, wg.graph));
  return total;
}

}  // namespace mvcomm
