#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/vertex_cover.hpp"

namespace mvcomm {

// Ties closer than this count as equal when comparing c_v against t and 1-t.
inline constexpr double kBandTolerance = 1e-12;

// Finite-support function w: (0,1] -> R>=0, stored as sorted (point, weight)
// pairs with duplicate points merged.
class SupportFunction {
 public:
  SupportFunction() = default;
  explicit SupportFunction(std::vector<std::pair<double, double>> points) {
    for (const auto& [x, w] : points) {
      if (!(x > 0.0 && x <= 1.0)) fail(ErrorCode::InvalidSupport, "support point " + std::to_string(x) + " outside (0, 1]");
      if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorCode::InvalidSupport, "negative or non-finite weight");
    }
    std::sort(points.begin(), points.end());
    for (const auto& [x, w] : points) {
      if (!points_.empty() && points_.back().first == x)
        points_.back().second += w;
      else
        points_.emplace_back(x, w);
    }
  }

  const std::vector<std::pair<double, double>>& points() const { return points_; }

  // Σ_{y >= x} w(y)·y
  double upper_mass(double x) const {
    double s = 0.0;
    for (const auto& [y, w] : points_)
      if (y >= x - kBandTolerance) s += w * y;
    return s;
  }
  // Σ_{y <= 1-x} w(y)·y
  double lower_mass(double x) const {
    double s = 0.0;
    for (const auto& [y, w] : points_)
      if (y <= 1.0 - x + kBandTolerance) s += w * y;
    return s;
  }

 private:
  std::vector<std::pair<double, double>> points_;
};

struct MiddleRegionResult {
  bool condition_holds = false;
  double conclusion_value = 0.0;  // Σ w(y)·y(1-2y)
  double worst_margin = 0.0;      // min over x of upper_mass(x) - lower_mass(x)
};

// Checks "for all x in [1/2, 1]: Σ_{y>=x} w(y)y >= Σ_{y<=1-x} w(y)y" exactly.
// Both sides are step functions of x that only change at support points p
// (left side) and at 1-q (right side), so testing every breakpoint and one
// point inside every gap between breakpoints covers the continuum.
inline MiddleRegionResult middle_region_check(const SupportFunction& w) {
  std::vector<double> breaks{0.5, 1.0};
  for (const auto& [y, weight] : w.points()) {
    if (y >= 0.5) breaks.push_back(y);
    if (y <= 0.5) breaks.push_back(1.0 - y);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> probes = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) probes.push_back(0.5 * (breaks[i] + breaks[i + 1]));

  MiddleRegionResult out;
  double scale = 1.0;
  for (const auto& [y, weight] : w.points()) {
    out.conclusion_value += weight * y * (1.0 - 2.0 * y);
    scale += weight * y;
  }
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (double x : probes) out.worst_margin = std::min(out.worst_margin, w.upper_mass(x) - w.lower_mass(x));
  out.condition_holds = out.worst_margin >= -1e-12 * scale;
  return out;
}

// Smallest t in [1/2, 1] with Σ_{c_v > t} c_v <= Σ_{c_v < 1-t} c_v. Both sums
// are right-continuous step functions of t with jumps only at c_v and 1-c_v,
// so the minimum is attained at one of those candidates or at 1/2.
inline double threshold_t(const CoverProbabilities& c) {
  std::vector<double> cands{0.5, 1.0};
  for (double x : c.c) {
    if (x >= 0.5 && x <= 1.0) cands.push_back(x);
    if (1.0 - x >= 0.5 && 1.0 - x <= 1.0) cands.push_back(1.0 - x);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (double t : cands) {
    double high = 0.0, low = 0.0;
    for (double x : c.c) {
      if (x > t + kBandTolerance) high += x;
      if (x < 1.0 - t - kBandTolerance) low += x;
    }
    if (high <= low + kBandTolerance) return t;
  }
  return 1.0;
}

enum class Band { Low, Middle, High };

// S1 = {c_v < 1-t}, S2 = {1-t <= c_v <= t}, S3 = {c_v > t}; ties go to S2.
inline Band band_of(double c_v, double t) {
  if (c_v > t + kBandTolerance) return Band::High;
  if (c_v < 1.0 - t - kBandTolerance) return Band::Low;
  return Band::Middle;
}

struct WeightBoundResult {
  double lhs = 0.0;  // Σ_{v in X} (1 - (2-beta) c_v)
  double rhs = 0.0;  // (beta/2) Σ_v c_v
  bool holds = false;
  VertexSet cover;
};

inline WeightBoundResult weight_bound_check(const Graph& e_a, const GraphDistribution& d_b, double beta) {
  check_beta(beta);
  const CoverProbabilities c = cover_probabilities(e_a, d_b);
  const WeightVector w = weights_from_probs(c, beta);
  WeightBoundResult out;
  out.cover = min_weight_vc(e_a, w);
  out.lhs = total_weight(out.cover, w);
  out.rhs = 0.5 * beta * c.sum();
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

// The threshold cover for one drawn adversary graph: every high-band vertex
// plus the middle-band part of the canonical MVC of e_a ∪ drawn.
inline VertexSet threshold_cover(const Graph& e_a, const CoverProbabilities& c, double t, const Graph& drawn) {
  VertexSet out;
  const VertexSet mvc = mvc_canonical(graph_union(e_a, drawn));
  for (int v = 0; v < e_a.n(); ++v) {
    const Band b = band_of(c.c[v], t);
    if (b == Band::High || (b == Band::Middle && mvc.contains(v))) out.insert(v);
  }
  return out;
}

inline VertexSet randomized_cover_I(const Graph& e_a, const GraphDistribution& d_b, double beta, std::uint64_t seed) {
  check_beta(beta);
  const CoverProbabilities c = cover_probabilities(e_a, d_b);
  const double t = threshold_t(c);
  Rng rng(seed);
  const double u = uniform01(rng);
  double acc = 0.0;
  const Graph* drawn = &d_b.support().back().graph;
  for (const WeightedGraph& wg : d_b.support()) {
    acc += wg.probability;
    if (u < acc) {
      drawn = &wg.graph;
      break;
    }
  }
  return threshold_cover(e_a, c, t, *drawn);
}

struct ThresholdCoverExpectation {
  double expected_weight = 0.0;  // E[Σ_{v in I} w_v], exact over the support
  double bound = 0.0;            // (beta/2) Σ c_v
  bool always_covers = true;     // every draw's I covers e_a
};

inline ThresholdCoverExpectation expected_threshold_cover(const Graph& e_a, const GraphDistribution& d_b, double beta) {
  check_beta(beta);
  const CoverProbabilities c = cover_probabilities(e_a, d_b);
  const WeightVector w = weights_from_probs(c, beta);
  const double t = threshold_t(c);
  ThresholdCoverExpectation out;
  for (const WeightedGraph& wg : d_b.support()) {
    const VertexSet cover = threshold_cover(e_a, c, t, wg.graph);
    out.expected_weight += wg.probability * total_weight(cover, w);
    if (!e_a.is_cover(cover)) out.always_covers = false;
  }
  out.bound = 0.5 * beta * c.sum();
  return out;
}

}  // namespace mvcomm
