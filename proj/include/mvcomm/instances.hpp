#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/partitioned_instance.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/vertex_set.hpp"

namespace mvcomm {

inline Graph random_graph(int n, double edge_prob, Rng& rng) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, edge_prob)) edges.push_back({u, v});
  return Graph(n, edges);
}

// Erdős–Rényi graph whose edges are dealt independently and uniformly to k
// parties.
inline PartitionedInstance random_partitioned_instance(int n, double edge_prob, int k, std::uint64_t seed) {
  if (k < 1) fail(ErrorCode::ParamOutOfRange, "k must be >= 1");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) fail(ErrorCode::ParamOutOfRange, "edge probability outside [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<Edge>> per_party(static_cast<std::size_t>(k));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, edge_prob)) per_party[uniform_below(rng, static_cast<std::uint64_t>(k))].push_back({u, v});
  PartitionedInstance inst{n, {}};
  for (const auto& edges : per_party) inst.parts.emplace_back(n, edges);
  return inst;
}

// Blocks A, B, C, D of m vertices each (in that vertex order); party 1 holds
// the matching A–B, party 2 the matching C–D, party 3 the clique on B ∪ C.
struct LayeredInstance {
  int m = 0;
  PartitionedInstance instance;
  VertexSet a, b, c, d;

  // M1, then M2, then the clique edges: the order under which a greedy
  // maximal matching picks up every vertex.
  std::vector<Edge> adversarial_order() const {
    std::vector<Edge> order;
    for (int p = 0; p < 3; ++p)
      for (const Edge& e : instance.parts[p].edges()) order.push_back(e);
    return order;
  }
};

inline LayeredInstance layered_instance(int m) {
  if (m < 1 || 4 * m > kMaxVertices) fail(ErrorCode::ParamOutOfRange, "layered block size must be in [1, 16]");
  const int n = 4 * m;
  std::vector<Edge> m1, m2, clique;
  LayeredInstance out;
  out.m = m;
  for (int j = 0; j < m; ++j) {
    out.a.insert(j);
    out.b.insert(m + j);
    out.c.insert(2 * m + j);
    out.d.insert(3 * m + j);
    m1.push_back({j, m + j});
    m2.push_back({2 * m + j, 3 * m + j});
  }
  for (int u = m; u < 3 * m; ++u)
    for (int v = u + 1; v < 3 * m; ++v) clique.push_back({u, v});
  out.instance = PartitionedInstance{n, {Graph(n, m1), Graph(n, m2), Graph(n, clique)}};
  return out;
}

// Bipartite graph on P = [0, n_side), Q = [n_side, 2·n_side) that is the
// union of pairwise edge-disjoint induced matchings of equal size.
struct RsGraph {
  int n_side = 0;
  Graph graph;
  std::vector<std::vector<Edge>> matchings;

  int match_size() const { return matchings.empty() ? 0 : static_cast<int>(matchings.front().size()); }
};

// No edge of g joins two vertices matched by `matching` except its own edges.
inline bool is_induced_matching(const Graph& g, const std::vector<Edge>& matching) {
  VertexSet covered;
  for (const Edge& e : matching) {
    if (covered.contains(e.u) || covered.contains(e.v)) return false;
    if (!g.has_edge(e.u, e.v)) return false;
    covered.insert(e.u);
    covered.insert(e.v);
  }
  std::size_t inside = 0;
  for (const Edge& e : g.edges())
    if (covered.contains(e.u) && covered.contains(e.v)) ++inside;
  return inside == matching.size();
}

namespace detail {

class RsSearch {
 public:
  RsSearch(int n_side, int k_m, int match_size, std::uint64_t seed, long budget)
      : n_(n_side), k_(k_m), size_(match_size), rng_(seed), budget_(budget),
        adj_(static_cast<std::size_t>(2 * n_side), 0) {}

  bool run() { return place(0); }
  const std::vector<std::vector<Edge>>& matchings() const { return done_; }

 private:
  bool place(int idx) {
    if (idx == k_) return true;
    for (int attempt = 0; attempt < 8; ++attempt) {
      if (budget_ <= 0) return false;
      std::vector<Edge> current;
      std::vector<int> ps(n_);
      for (int p = 0; p < n_; ++p) ps[p] = p;
      shuffle(ps, rng_);
      if (!extend(ps, 0, current, VertexSet{}, VertexSet{})) continue;
      for (const Edge& e : current) add_edge(e);
      done_.push_back(current);
      if (place(idx + 1)) return true;
      done_.pop_back();
      for (const Edge& e : current) remove_edge(e);
    }
    return false;
  }

  bool extend(const std::vector<int>& ps, std::size_t from, std::vector<Edge>& current, VertexSet used_p, VertexSet used_q) {
    if (static_cast<int>(current.size()) == size_) return true;
    if (--budget_ <= 0) return false;
    if (static_cast<int>(ps.size() - from) < size_ - static_cast<int>(current.size())) return false;
    const int p = ps[from];
    std::vector<int> qs(n_);
    for (int q = 0; q < n_; ++q) qs[q] = n_ + q;
    shuffle(qs, rng_);
    for (int q : qs) {
      if (used_q.contains(q) || edge_present(p, q)) continue;
      if (!compatible(p, q, used_p, used_q)) continue;
      current.push_back({p, q});
      VertexSet np = used_p, nq = used_q;
      np.insert(p);
      nq.insert(q);
      if (extend(ps, from + 1, current, np, nq)) return true;
      current.pop_back();
      if (budget_ <= 0) return false;
    }
    return extend(ps, from + 1, current, used_p, used_q);
  }

  // Adding (p, q) keeps every placed matching induced, and the matching
  // under construction stays induced with respect to existing edges.
  bool compatible(int p, int q, VertexSet used_p, VertexSet used_q) const {
    for (const auto& m : done_) {
      bool p_in = false, q_in = false;
      for (const Edge& e : m) {
        p_in |= e.u == p;
        q_in |= e.v == q;
      }
      if (p_in && q_in) return false;
    }
    if ((VertexSet(adj_[p]) & used_q).size() > 0) return false;
    if ((VertexSet(adj_[q]) & used_p).size() > 0) return false;
    return true;
  }

  bool edge_present(int p, int q) const { return (adj_[p] >> q) & 1U; }
  void add_edge(const Edge& e) {
    adj_[e.u] |= std::uint64_t{1} << e.v;
    adj_[e.v] |= std::uint64_t{1} << e.u;
  }
  void remove_edge(const Edge& e) {
    adj_[e.u] &= ~(std::uint64_t{1} << e.v);
    adj_[e.v] &= ~(std::uint64_t{1} << e.u);
  }

  int n_, k_, size_;
  Rng rng_;
  long budget_;
  std::vector<std::uint64_t> adj_;
  std::vector<std::vector<Edge>> done_;
};

}  // namespace detail

// Randomized backtracking search for k_m pairwise edge-disjoint induced
// matchings of size match_size in a bipartite graph with n_side vertices per
// side. Throws NotFound once the node budget is exhausted.
inline RsGraph find_rs_graph(int n_side, int k_m, int match_size, std::uint64_t seed = 1, long budget = 2'000'000) {
  if (n_side < 1 || 2 * n_side > kMaxVertices) fail(ErrorCode::ParamOutOfRange, "n_side must be in [1, 32]");
  if (k_m < 1 || match_size < 1) fail(ErrorCode::ParamOutOfRange, "k_m and match_size must be positive");
  if (match_size > n_side) fail(ErrorCode::NotFound, "matching larger than a side");
  detail::RsSearch search(n_side, k_m, match_size, seed, budget);
  if (!search.run())
    fail(ErrorCode::NotFound, "no " + std::to_string(k_m) + " induced matchings of size " + std::to_string(match_size) +
                                  " found on " + std::to_string(n_side) + "+" + std::to_string(n_side) + " vertices");
  RsGraph rs;
  rs.n_side = n_side;
  rs.matchings = search.matchings();
  std::vector<Edge> all;
  for (const auto& m : rs.matchings) all.insert(all.end(), m.begin(), m.end());
  rs.graph = Graph(2 * n_side, all);
  return rs;
}

struct RsInstanceFamily {
  RsGraph rs;
  double eps2 = 0.1;

  // |M_i| = (1/2 - eps1)·n_side
  double eps1() const { return 0.5 - static_cast<double>(rs.match_size()) / rs.n_side; }
  // Edges kept per matching; at least one.
  int sample_size() const {
    return std::max(1, static_cast<int>(std::ceil(eps2 * rs.match_size() - 1e-12)));
  }
  int num_vertices() const { return 2 * rs.n_side + 2 * (rs.n_side - rs.match_size()); }
};

struct RsLowerBoundInstance {
  PartitionedInstance instance;  // party 1: E_1, party 2: E_2
  VertexSet witness;             // P̃ ∪ (P ∖ P_r) ∪ (Q ∖ Q_r)
  int r = 0;                     // hidden matching index (0-based)
  std::vector<std::vector<Edge>> sampled;  // M_i'
};

// Vertex layout: P = [0, n), Q = [n, 2n), P' = [2n, 3n - s), Q' = [3n - s,
// 4n - 2s) where s = match size. E_1 keeps sample_size() random edges of every
// matching; E_2 perfectly matches P' to P ∖ P_r and Q' to Q ∖ Q_r.
inline RsLowerBoundInstance rs_lower_bound_instance(const RsInstanceFamily& fam, std::uint64_t seed) {
  const RsGraph& rs = fam.rs;
  if (rs.matchings.empty()) fail(ErrorCode::InvalidGraph, "RS graph without matchings");
  for (const auto& m : rs.matchings)
    if (!is_induced_matching(rs.graph, m) || m.size() != rs.matchings.front().size())
      fail(ErrorCode::InvalidGraph, "RS family matchings must be induced and of equal size");
  const int n = rs.n_side;
  const int ms = rs.match_size();
  const int total = fam.num_vertices();
  if (total > kMaxVertices) fail(ErrorCode::ParamOutOfRange, "lower-bound instance exceeds 64 vertices");
  Rng rng(seed);

  RsLowerBoundInstance out;
  std::vector<Edge> e1;
  for (const auto& m : rs.matchings) {
    std::vector<Edge> pick = m;
    shuffle(pick, rng);
    pick.resize(static_cast<std::size_t>(fam.sample_size()));
    std::sort(pick.begin(), pick.end());
    e1.insert(e1.end(), pick.begin(), pick.end());
    out.sampled.push_back(std::move(pick));
  }
  out.r = static_cast<int>(uniform_below(rng, rs.matchings.size()));

  VertexSet p_r, q_r;
  for (const Edge& e : rs.matchings[out.r]) {
    p_r.insert(e.u);
    q_r.insert(e.v);
  }
  std::vector<Edge> e2;
  int next_p = 2 * n, next_q = 2 * n + (n - ms);
  for (int p = 0; p < n; ++p)
    if (!p_r.contains(p)) {
      e2.push_back({next_p++, p});
      out.witness.insert(p);
    }
  for (int q = n; q < 2 * n; ++q)
    if (!q_r.contains(q)) {
      e2.push_back({next_q++, q});
      out.witness.insert(q);
    }
  for (const Edge& e : out.sampled[out.r]) out.witness.insert(e.u);
  out.instance = PartitionedInstance{total, {Graph(total, e1), Graph(total, e2)}};
  return out;
}

}  // namespace mvcomm

namespace mvcomm {

// Random finite-support distribution over graphs on n vertices with random
// (normalized) probabilities.
inline GraphDistribution random_distribution(int n, int support, double edge_prob, Rng& rng) {
  if (support < 1) fail(ErrorCode::ParamOutOfRange, "support must be positive");
  std::vector<WeightedGraph> items;
  double total = 0.0;
  for (int s = 0; s < support; ++s) {
    const double w = 0.05 + uniform01(rng);
    items.push_back({random_graph(n, edge_prob, rng), w});
    total += w;
  }
  for (WeightedGraph& wg : items) wg.probability /= total;
  return GraphDistribution(n, std::move(items));
}

// Random subgraph keeping each edge with probability keep.
inline Graph random_subgraph(const Graph& g, double keep, Rng& rng) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (bernoulli(rng, keep)) kept.push_back(e);
  return Graph(g.n(), kept);
}

}  // namespace mvcomm
