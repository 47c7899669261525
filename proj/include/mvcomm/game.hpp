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
#include "mvcomm/graph.hpp"
#include "mvcomm/matrix_game.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/vertex_cover.hpp"

namespace mvcomm {

// The MVC game: Alice commits to a cover X of e_a; the adversary picks E_B
// from a finite candidate family with o <= τ(E_B ∪ e_a) <= (1+eps)·o and
// receives (|X| + (2-beta)·τ(E_B[V∖X])) / τ(E_B ∪ e_a).
struct MvcGameSpec {
  Graph e_a;
  double beta = 1.0;
  double eps = 0.1;
  double o = 1.0;
  std::vector<Graph> adversary_candidates;

  int n() const { return e_a.n(); }

  // Throws InvalidGameSpec / ParamOutOfRange / DimensionMismatch.
  void validate() const {
    check_beta(beta);
    if (!(eps > 0.0 && eps < 1.0)) fail(ErrorCode::ParamOutOfRange, "eps=" + std::to_string(eps) + " outside (0, 1)");
    if (!(o > 0.0 && o < n())) fail(ErrorCode::InvalidGameSpec, "o=" + std::to_string(o) + " outside (0, n)");
    if (adversary_candidates.empty()) fail(ErrorCode::InvalidGameSpec, "no adversary candidates");
    for (std::size_t j = 0; j < adversary_candidates.size(); ++j) {
      const Graph& e_b = adversary_candidates[j];
      require_same_n(e_a, e_b, "game candidate");
      if (!within_guess(mvc_size(graph_union(e_b, e_a)), o, eps))
        fail(ErrorCode::InvalidGameSpec, "candidate " + std::to_string(j) + " violates o <= tau <= (1+eps)o");
    }
  }

  static bool within_guess(int tau, double o, double eps) {
    constexpr double kSlack = 1e-9;
    return tau >= o - kSlack && tau <= (1.0 + eps) * o + kSlack;
  }
};

struct MixedStrategy {
  std::vector<std::pair<VertexSet, double>> support;

  static MixedStrategy pure(VertexSet x) { return MixedStrategy{{{x, 1.0}}}; }
};

struct GameSolution {
  MixedStrategy alice;
  std::vector<double> adversary;  // mixture over adversary_candidates
  double value = 0.0;             // max over candidates of Alice's expected utility
  double gap = 0.0;               // value minus the adversary's guaranteed lower bound
  long iterations = 0;            // fictitious-play rounds, summed over refinements
  bool converged = true;          // gap <= tol
};

struct SolveOptions {
  double tol = 1e-6;
  long max_iters = 100000;
  // Fictitious-play rounds spent before an exact LP refinement takes over.
  long warmup_iters = 2000;
  int lp_limit = 200;
  int enumeration_cap = kDefaultEnumerationCap;
  // Best responses range over every cover of e_a when e_a has at most this
  // many covers (and at most 12 vertices); otherwise over min-weight covers.
  int exact_cover_limit = 512;
};

namespace detail {

inline double utility_given(VertexSet x, const Graph& e_b, double beta, int tau_union) {
  return (x.size() + (2.0 - beta) * mvc_size(residual_graph(e_b, x))) / static_cast<double>(tau_union);
}

}  // namespace detail

inline double utility(VertexSet x, const Graph& e_b, const MvcGameSpec& spec) {
  if (!spec.e_a.is_cover(x)) fail(ErrorCode::NotACover, "strategy does not cover e_a");
  require_same_n(spec.e_a, e_b, "utility");
  const int tau = mvc_size(graph_union(e_b, spec.e_a));
  if (tau == 0) fail(ErrorCode::InvalidGameSpec, "tau(E_B ∪ e_a) = 0");
  return detail::utility_given(x, e_b, spec.beta, tau);
}

inline double expected_utility(VertexSet x, const MvcGameSpec& spec, const GraphDistribution& adversary) {
  double total = 0.0;
  for (const WeightedGraph& wg : adversary.support())
    if (wg.probability > 0.0) total += wg.probability * utility(x, wg.graph, spec);
  return total;
}

// Min-weight cover of e_a under w_v = 1 - (2 - beta)·c_v.
inline VertexSet best_response_cover(const Graph& e_a, const GraphDistribution& adversary, double beta) {
  return min_weight_vc(e_a, weights_from_probs(cover_probabilities(e_a, adversary), beta));
}

inline VertexSet best_response_cover(const MvcGameSpec& spec, const GraphDistribution& adversary) {
  for (const WeightedGraph& wg : adversary.support()) {
    const bool known = std::find(spec.adversary_candidates.begin(), spec.adversary_candidates.end(),
                                 wg.graph) != spec.adversary_candidates.end();
    if (!known && wg.probability > 0.0)
      fail(ErrorCode::InvalidGameSpec, "adversary mixture is not supported on the candidate family");
  }
  return best_response_cover(spec.e_a, adversary, spec.beta);
}

namespace detail {

// Every cover of g, or nothing when there are more than limit of them.
inline std::vector<VertexSet> all_covers_within(const Graph& g, int limit) {
  std::vector<VertexSet> out;
  if (g.n() > 12) return out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << g.n()); ++b) {
    if (!g.is_cover(VertexSet(b))) continue;
    if (static_cast<int>(out.size()) == limit) return {};
    out.emplace_back(b);
  }
  return out;
}

}  // namespace detail

// Row generation over Alice's covers. Rows start as the minimal covers of e_a
// plus the full vertex set; each round solves the restricted game and adds
// Alice's best response to the adversary's equilibrium mixture. With few
// enough covers the best response is exact over all covers, so the final
// value is the value of the full game. Otherwise it is the min-weight cover
// for that mixture, and the loop stops once that cover is already a row.
inline GameSolution solve_game(const MvcGameSpec& spec, const SolveOptions& opts = {}) {
  spec.validate();
  if (!(opts.tol > 0.0)) fail(ErrorCode::ParamOutOfRange, "tol must be positive");
  const auto& cands = spec.adversary_candidates;
  const int cols = static_cast<int>(cands.size());
  std::vector<int> tau_union(cols);
  for (int j = 0; j < cols; ++j) tau_union[j] = mvc_size(graph_union(cands[j], spec.e_a));

  if (cols == 1) {
    const VertexSet x = best_response_cover(spec.e_a, GraphDistribution::point_mass(cands[0]), spec.beta);
    GameSolution sol;
    sol.alice = MixedStrategy::pure(x);
    sol.adversary = {1.0};
    sol.value = detail::utility_given(x, cands[0], spec.beta, tau_union[0]);
    return sol;
  }

  auto payoff_row = [&](VertexSet x) {
    std::vector<double> row(cols);
    for (int j = 0; j < cols; ++j) row[j] = detail::utility_given(x, cands[j], spec.beta, tau_union[j]);
    return row;
  };
  const std::vector<VertexSet> every_cover = detail::all_covers_within(spec.e_a, opts.exact_cover_limit);
  std::vector<std::vector<double>> every_payoff;
  for (VertexSet x : every_cover) every_payoff.push_back(payoff_row(x));

  std::vector<VertexSet> rows = enumerate_minimal_vertex_covers(spec.e_a, opts.enumeration_cap);
  if (std::find(rows.begin(), rows.end(), spec.e_a.vertices()) == rows.end()) rows.push_back(spec.e_a.vertices());
  std::vector<std::vector<double>> payoff;
  for (VertexSet x : rows) payoff.push_back(payoff_row(x));

  GameSolution sol;
  MatrixGameSolution eq;
  const int max_rounds = every_cover.empty() ? 64 : static_cast<int>(every_cover.size());
  for (int round = 0;; ++round) {
    const PayoffMatrix a(payoff);
    const bool exact = a.rows() <= opts.lp_limit && a.cols() <= opts.lp_limit;
    eq = fictitious_play(a, opts.tol, exact ? std::min(opts.warmup_iters, opts.max_iters) : opts.max_iters);
    sol.iterations += eq.iterations;
    if (exact && eq.gap() > opts.tol) {
      const long fp_iters = eq.iterations;
      eq = solve_zero_sum_lp(a);
      eq.iterations = fp_iters;
    }
    if (round >= max_rounds) break;

    VertexSet br;
    if (!every_cover.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < every_cover.size(); ++c) {
        double u = 0.0;
        for (int j = 0; j < cols; ++j) u += eq.col_strategy[j] * every_payoff[c][j];
        if (u < best) {
          best = u;
          br = every_cover[c];
        }
      }
      if (best >= eq.upper - 1e-12) break;
    } else {
      std::vector<WeightedGraph> mix;
      for (int j = 0; j < cols; ++j) mix.push_back({cands[j], eq.col_strategy[j]});
      br = best_response_cover(spec.e_a, GraphDistribution(spec.n(), std::move(mix)), spec.beta);
    }
    if (std::find(rows.begin(), rows.end(), br) != rows.end()) break;
    rows.push_back(br);
    payoff.push_back(payoff_row(br));
  }

  for (std::size_t i = 0; i < rows.size(); ++i)
    if (eq.row_strategy[i] > 0.0) sol.alice.support.emplace_back(rows[i], eq.row_strategy[i]);
  sol.adversary = eq.col_strategy;
  sol.value = eq.upper;
  sol.gap = eq.gap();
  sol.converged = sol.gap <= opts.tol;
  return sol;
}

// Draws one cover from Alice's mixture; deterministic in seed.
inline VertexSet sample_strategy(const MixedStrategy& m, std::uint64_t seed) {
  if (m.support.empty()) fail(ErrorCode::InvalidSupport, "empty mixed strategy");
  Rng rng(seed);
  const double u = uniform01(rng);
  double total = 0.0;
  for (const auto& [x, p] : m.support) total += p;
  double acc = 0.0;
  for (const auto& [x, p] : m.support) {
    acc += p / total;
    if (u < acc) return x;
  }
  return m.support.back().first;
}

}  // namespace mvcomm
