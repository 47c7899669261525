#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/game.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/partitioned_instance.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/vertex_cover.hpp"

namespace mvcomm {

enum class ProtocolMode { Oracle, Game };

inline std::string_view to_string(ProtocolMode m) { return m == ProtocolMode::Oracle ? "oracle" : "game"; }

inline ProtocolMode parse_mode(std::string_view s) {
  if (s == "oracle") return ProtocolMode::Oracle;
  if (s == "game") return ProtocolMode::Game;
  fail(ErrorCode::ParamOutOfRange, "unknown mode '" + std::string(s) + "'");
}

// b_i = ceil((k - i)·log_{1+eps} 2) + 1 size guesses per received cover.
inline int num_guesses(int k, int i, double eps) {
  if (!(eps > 0.0 && eps < 0.2)) fail(ErrorCode::ParamOutOfRange, "eps=" + std::to_string(eps) + " outside (0, 1/5)");
  if (i < 1 || i >= k) fail(ErrorCode::ParamOutOfRange, "party " + std::to_string(i) + " has no guesses for k=" + std::to_string(k));
  const double span = (k - i) * std::log(2.0) / std::log1p(eps);
  return static_cast<int>(std::ceil(span)) + 1;
}

struct ProtocolConfig {
  int k = 2;
  double eps = 0.1;
  ProtocolMode mode = ProtocolMode::Oracle;
  std::uint64_t seed = 0;

  // Headroom of party i's game: 2 - beta is the ratio the remaining k - i
  // parties guarantee. The last of them solves exactly (beta = 1); otherwise
  // the remaining parties achieve 2 - 2^{-(k-i-1)} + 5 eps.
  double beta(int i) const {
    if (i == k - 1) return 1.0;
    return std::ldexp(1.0, i + 1 - k) - 5.0 * eps;
  }

  void validate() const {
    if (k < 1) fail(ErrorCode::ParamOutOfRange, "k must be >= 1");
    if (!(eps > 0.0 && eps < 0.2)) fail(ErrorCode::ParamOutOfRange, "eps=" + std::to_string(eps) + " outside (0, 1/5)");
    for (int i = 1; i < k; ++i)
      if (!(beta(i) > 0.0))
        fail(ErrorCode::ParamOutOfRange, "beta for party " + std::to_string(i) + " is " + std::to_string(beta(i)) +
                                             "; need smaller eps for k=" + std::to_string(k));
  }

  // 2 - 2^{1-k} + 5 eps
  double ratio_bound() const { return 2.0 - std::ldexp(1.0, 1 - k) + 5.0 * eps; }
};

// A set of covers of the edges seen so far; costs n bits per cover.
struct Message {
  std::vector<VertexSet> covers;

  std::size_t size() const { return covers.size(); }
  std::uint64_t bits(int n) const { return static_cast<std::uint64_t>(covers.size()) * static_cast<std::uint64_t>(n); }
};

struct StrategyRequest {
  int party = 1;
  VertexSet committed;       // S
  const Graph* residual{};   // G_i' = G_i[V ∖ S]
  double guess = 0.0;        // O
  double beta = 1.0;
  std::uint64_t seed = 0;
};

// Returns a cover X of *request.residual.
using StrategyProvider = std::function<VertexSet(const StrategyRequest&)>;

namespace detail {

inline void require_covers(const Message& m, const Graph* prior, const char* who) {
  if (prior == nullptr) return;
  for (VertexSet s : m.covers)
    if (!prior->is_cover(s)) fail(ErrorCode::InvalidMessage, std::string(who) + ": received set does not cover earlier parties' edges");
}

}  // namespace detail

// One non-final party. `prior` (union of earlier parties' edges) is only used
// to check the incoming message and may be null.
inline Message party_step(int i, const Graph& g_i, const Message& m_prev, const ProtocolConfig& cfg,
                          const StrategyProvider& provider, const Graph* prior = nullptr) {
  if (i < 1 || i >= cfg.k) fail(ErrorCode::ParamOutOfRange, "party_step for party " + std::to_string(i));
  detail::require_covers(m_prev, prior, "party_step");
  const int guesses = num_guesses(cfg.k, i, cfg.eps);
  const double beta = cfg.beta(i);

  struct Residual {
    Graph graph;
    int tau = 0;
    VertexSet mvc;
  };
  std::unordered_map<std::uint64_t, Residual> cache;

  Message out;
  for (std::size_t s_idx = 0; s_idx < m_prev.covers.size(); ++s_idx) {
    const VertexSet s = m_prev.covers[s_idx];
    auto it = cache.find(s.bits());
    if (it == cache.end()) {
      Residual r{residual_graph(g_i, s), 0, {}};
      r.tau = mvc_size(r.graph);
      r.mvc = mvc_canonical(r.graph);
      it = cache.emplace(s.bits(), std::move(r)).first;
    }
    const Residual& res = it->second;
    if (!res.graph.has_edges()) {
      out.covers.push_back(s);
      continue;
    }
    for (int l = 1; l <= guesses; ++l) {
      StrategyRequest req;
      req.party = i;
      req.committed = s;
      req.residual = &res.graph;
      req.guess = std::pow(1.0 + cfg.eps, l - 1) * res.tau;
      req.beta = beta;
      req.seed = derive_seed(cfg.seed, i, s_idx, l);
      const VertexSet x = provider(req);
      if (!res.graph.is_cover(x)) fail(ErrorCode::InvalidMessage, "strategy returned a set that does not cover G_i'");
      out.covers.push_back(x | s);
    }
    out.covers.push_back(res.mvc | s);
  }
  return out;
}

// The last party completes each received cover exactly and keeps the smallest
// completion (lexicographic tie-break).
inline VertexSet final_step(const Graph& g_k, const Message& m_prev, const Graph* prior = nullptr) {
  detail::require_covers(m_prev, prior, "final_step");
  if (m_prev.covers.empty()) fail(ErrorCode::InvalidMessage, "empty message");
  std::vector<VertexSet> distinct = m_prev.covers;
  std::sort(distinct.begin(), distinct.end(), [](VertexSet a, VertexSet b) { return a.bits() < b.bits(); });
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  VertexSet best;
  bool have = false;
  for (VertexSet s : distinct) {
    const VertexSet cand = mvc_canonical(residual_graph(g_k, s)) | s;
    if (!have || cand.size() < best.size() || (cand.size() == best.size() && lex_less(cand, best))) {
      best = cand;
      have = true;
    }
  }
  return best;
}

struct ProtocolReport {
  VertexSet output;
  bool valid = false;
  int output_size = 0;
  int opt = 0;
  double ratio = 0.0;
  bool ratio_defined = true;                 // false when opt = 0 but the output is nonempty
  std::vector<std::uint64_t> round_bits;      // |M_i|·n for i = 1..k-1
  std::vector<std::size_t> message_sizes;     // |M_i|
  std::vector<int> guesses_per_party;         // b_i
  std::uint64_t total_comm_bits = 0;
};

inline ProtocolReport run_protocol(const PartitionedInstance& inst, const ProtocolConfig& cfg,
                                   const StrategyProvider& provider) {
  cfg.validate();
  inst.validate();
  if (inst.k() != cfg.k)
    fail(ErrorCode::DimensionMismatch, "instance has " + std::to_string(inst.k()) + " parts, config k=" + std::to_string(cfg.k));

  ProtocolReport rep;
  Message m{{VertexSet{}}};
  Graph prior(inst.n);
  for (int i = 1; i < cfg.k; ++i) {
    m = party_step(i, inst.parts[i - 1], m, cfg, provider, &prior);
    prior = graph_union(prior, inst.parts[i - 1]);
    rep.message_sizes.push_back(m.size());
    rep.round_bits.push_back(m.bits(inst.n));
    rep.guesses_per_party.push_back(num_guesses(cfg.k, i, cfg.eps));
    rep.total_comm_bits += m.bits(inst.n);
  }
  rep.output = final_step(inst.parts[cfg.k - 1], m, &prior);
  const Graph base = inst.base();
  rep.valid = base.is_cover(rep.output);
  rep.output_size = rep.output.size();
  rep.opt = mvc_size(base);
  if (rep.opt > 0) {
    rep.ratio = static_cast<double>(rep.output_size) / rep.opt;
  } else if (rep.output_size == 0) {
    rep.ratio = 1.0;
  } else {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.ratio_defined = false;
  }
  return rep;
}

// Distribution over what parties 2..k hold. A scenario either lists every
// future part (k-1 graphs, party 2 first) or only their union (one graph).
struct FutureScenario {
  double probability = 0.0;
  std::vector<Graph> parts;
};

class FutureDistribution {
 public:
  FutureDistribution() = default;
  FutureDistribution(int n, std::vector<FutureScenario> scenarios) : n_(n), scenarios_(std::move(scenarios)) {
    if (scenarios_.empty()) fail(ErrorCode::InvalidDistribution, "empty future distribution");
    double total = 0.0;
    for (const FutureScenario& s : scenarios_) {
      if (s.parts.empty()) fail(ErrorCode::InvalidDistribution, "scenario without parts");
      for (const Graph& g : s.parts)
        if (g.n() != n_) fail(ErrorCode::DimensionMismatch, "scenario graph has wrong n");
      total += s.probability;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) fail(ErrorCode::InvalidDistribution, "scenario probabilities do not sum to 1");
  }

  static FutureDistribution from_unions(const GraphDistribution& d) {
    std::vector<FutureScenario> sc;
    for (const WeightedGraph& wg : d.support()) sc.push_back({wg.probability, {wg.graph}});
    return FutureDistribution(d.n(), std::move(sc));
  }

  // The realized future itself, with per-party detail.
  static FutureDistribution truth(const PartitionedInstance& inst) {
    if (inst.k() == 1) return FutureDistribution(inst.n, {{1.0, {Graph(inst.n)}}});
    return FutureDistribution(inst.n, {{1.0, std::vector<Graph>(inst.parts.begin() + 1, inst.parts.end())}});
  }

  int n() const { return n_; }
  const std::vector<FutureScenario>& scenarios() const { return scenarios_; }

  // What party i (1-based) believes about parties i+1..k: scenarios consistent
  // with the realized parts 2..i, renormalized. Per-party scenarios must match
  // those parts exactly; union-only scenarios must contain their edges, which
  // are then removed. With no consistent scenario the prior is used as is.
  GraphDistribution future_for(int i, const PartitionedInstance& realized) const {
    const Graph prefix = realized.union_of(2, i);
    std::vector<WeightedGraph> consistent, fallback;
    for (const FutureScenario& s : scenarios_) {
      const bool per_party = s.parts.size() > 1 || realized.k() == 2;
      Graph future(n_);
      bool ok = true;
      if (per_party) {
        for (int p = 2; p <= i; ++p)
          if (p - 2 < static_cast<int>(s.parts.size()) && !(s.parts[p - 2] == realized.parts[p - 1])) ok = false;
        std::vector<Graph> rest;
        for (std::size_t j = static_cast<std::size_t>(std::max(0, i - 1)); j < s.parts.size(); ++j) rest.push_back(s.parts[j]);
        if (!rest.empty()) future = graph_union(rest, n_);
      } else {
        ok = edge_subset(prefix, s.parts[0]);
        future = graph_difference(s.parts[0], prefix);
      }
      fallback.push_back({future, s.probability});
      if (ok) consistent.push_back({future, s.probability});
    }
    auto& pick = consistent.empty() ? fallback : consistent;
    double total = 0.0;
    for (const WeightedGraph& wg : pick) total += wg.probability;
    if (total <= 0.0) {
      for (WeightedGraph& wg : pick) wg.probability = 1.0 / static_cast<double>(pick.size());
    } else {
      for (WeightedGraph& wg : pick) wg.probability /= total;
    }
    return GraphDistribution(n_, std::move(pick));
  }

 private:
  int n_ = 0;
  std::vector<FutureScenario> scenarios_;
};

// Min-weight best response against the future distribution restricted to V∖S.
inline VertexSet strategy_provider_oracle(const StrategyRequest& req, const GraphDistribution& d_future) {
  std::vector<WeightedGraph> restricted;
  for (const WeightedGraph& wg : d_future.support())
    restricted.push_back({residual_graph(wg.graph, req.committed), wg.probability});
  return best_response_cover(*req.residual, GraphDistribution(d_future.n(), std::move(restricted)), req.beta);
}

// Solves the finite game over the candidates (restricted to V∖S) whose τ lies
// in the guess window, then samples Alice's mixture. Falls back to the exact
// MVC of G_i' when no candidate fits the window.
inline VertexSet strategy_provider_game(const StrategyRequest& req, double eps, const std::vector<Graph>& candidate_family,
                                        const SolveOptions& opts = {}) {
  MvcGameSpec spec{*req.residual, req.beta, eps, req.guess, {}};
  for (const Graph& c : candidate_family) {
    const Graph r = residual_graph(c, req.committed);
    if (!MvcGameSpec::within_guess(mvc_size(graph_union(r, *req.residual)), req.guess, eps)) continue;
    if (std::find(spec.adversary_candidates.begin(), spec.adversary_candidates.end(), r) == spec.adversary_candidates.end())
      spec.adversary_candidates.push_back(r);
  }
  if (spec.adversary_candidates.empty()) return mvc_canonical(*req.residual);
  return sample_strategy(solve_game(spec, opts).alice, req.seed);
}

// Oracle-mode provider for one realized instance. Results are cached per
// (party, S) since the oracle ignores the size guess.
class OracleStrategy {
 public:
  OracleStrategy(FutureDistribution future, PartitionedInstance realized)
      : future_(std::move(future)), realized_(std::move(realized)) {}

  VertexSet operator()(const StrategyRequest& req) {
    const auto key = std::make_pair(req.party, req.committed.bits());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto dist = beliefs_.find(req.party);
    if (dist == beliefs_.end()) dist = beliefs_.emplace(req.party, future_.future_for(req.party, realized_)).first;
    const VertexSet x = strategy_provider_oracle(req, dist->second);
    cache_.emplace(key, x);
    return x;
  }

 private:
  FutureDistribution future_;
  PartitionedInstance realized_;
  std::map<int, GraphDistribution> beliefs_;
  std::map<std::pair<int, std::uint64_t>, VertexSet> cache_;
};

// Game-mode provider. families[i-1] is party i's adversary family (graphs of
// future edges on the full vertex set). Game solutions are cached per
// (party, S, filtered candidate set); only the sampling depends on the seed.
class GameStrategy {
 public:
  GameStrategy(std::vector<std::vector<Graph>> families, double eps, SolveOptions opts = {})
      : families_(std::move(families)), eps_(eps), opts_(opts) {}

  VertexSet operator()(const StrategyRequest& req) {
    if (req.party < 1 || req.party > static_cast<int>(families_.size()))
      fail(ErrorCode::ParamOutOfRange, "no adversary family for party " + std::to_string(req.party));
    const auto base_key = std::make_pair(req.party, req.committed.bits());
    auto rit = restricted_.find(base_key);
    if (rit == restricted_.end()) {
      Restricted r;
      for (const Graph& c : families_[req.party - 1]) {
        Graph g = residual_graph(c, req.committed);
        if (std::find(r.graphs.begin(), r.graphs.end(), g) != r.graphs.end()) continue;
        r.tau.push_back(mvc_size(graph_union(g, *req.residual)));
        r.graphs.push_back(std::move(g));
      }
      rit = restricted_.emplace(base_key, std::move(r)).first;
    }
    const Restricted& r = rit->second;
    std::vector<int> chosen;
    for (std::size_t j = 0; j < r.graphs.size(); ++j)
      if (MvcGameSpec::within_guess(r.tau[j], req.guess, eps_)) chosen.push_back(static_cast<int>(j));
    if (chosen.empty()) return mvc_canonical(*req.residual);

    const auto key = std::make_tuple(req.party, req.committed.bits(), chosen);
    auto sit = solved_.find(key);
    if (sit == solved_.end()) {
      MvcGameSpec spec{*req.residual, req.beta, eps_, req.guess, {}};
      for (int j : chosen) spec.adversary_candidates.push_back(r.graphs[j]);
      sit = solved_.emplace(key, solve_game(spec, opts_)).first;
      ++games_solved_;
    }
    return sample_strategy(sit->second.alice, req.seed);
  }

  long games_solved() const { return games_solved_; }

  // Builds per-party families from one family of future unions (parties 2..k)
  // by removing the realized edges of parties 2..i.
  static std::vector<std::vector<Graph>> from_union_family(const std::vector<Graph>& unions, const PartitionedInstance& realized) {
    std::vector<std::vector<Graph>> fam;
    for (int i = 1; i < realized.k(); ++i) {
      const Graph prefix = realized.union_of(2, i);
      std::vector<Graph> f;
      for (const Graph& u : unions) f.push_back(graph_difference(u, prefix));
      fam.push_back(std::move(f));
    }
    return fam;
  }

 private:
  struct Restricted {
    std::vector<Graph> graphs;
    std::vector<int> tau;
  };
  std::vector<std::vector<Graph>> families_;
  double eps_;
  SolveOptions opts_;
  std::map<std::pair<int, std::uint64_t>, Restricted> restricted_;
  std::map<std::tuple<int, std::uint64_t, std::vector<int>>, GameSolution> solved_;
  long games_solved_ = 0;
};

}  // namespace mvcomm
