#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mvcomm/error.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/vertex_set.hpp"

namespace mvcomm {

using WeightVector = std::vector<double>;

inline constexpr int kDefaultEnumerationCap = 16;

namespace detail {

inline std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Exact minimum vertex cover size by branch and bound over induced subgraphs
// G[R]. Degree-0/1 reductions, a greedy-matching lower bound, branching on a
// maximum-degree vertex (take v, or take all of N(v)), and a closed form once
// every remaining vertex has degree exactly 2 (disjoint cycles).
class CardinalityCover {
 public:
  explicit CardinalityCover(const std::vector<std::uint64_t>& adj) : adj_(adj) {}

  // Returns the optimum of G[r] if it is < ub, otherwise some value >= ub.
  int solve(std::uint64_t r, int ub) const {
    int forced = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint64_t b = r; b != 0; b &= b - 1) {
        const int v = std::countr_zero(b);
        if (!((r >> v) & 1U)) continue;
        const std::uint64_t nv = adj_[v] & r;
        if (nv == 0) {
          r &= ~bit(v);
        } else if ((nv & (nv - 1)) == 0) {
          r &= ~(nv | bit(v));
          ++forced;
          changed = true;
        }
      }
    }
    if (r == 0) return forced;
    if (forced + matching_bound(r) >= ub) return std::max(ub, forced);

    int best_v = -1;
    int best_deg = 0;
    for (std::uint64_t b = r; b != 0; b &= b - 1) {
      const int v = std::countr_zero(b);
      const int d = std::popcount(adj_[v] & r);
      if (d > best_deg) {
        best_deg = d;
        best_v = v;
      }
    }
    if (best_deg == 2) return forced + cycle_cover(r);

    int best = ub - forced;
    const std::uint64_t nv = adj_[best_v] & r;
    const int take_v = 1 + solve(r & ~bit(best_v), best - 1);
    if (take_v < best) best = take_v;
    const int nsize = std::popcount(nv);
    if (nsize < best) {
      const int take_n = nsize + solve(r & ~(nv | bit(best_v)), best - nsize);
      if (take_n < best) best = take_n;
    }
    return forced + best;
  }

 private:
  int matching_bound(std::uint64_t r) const {
    int size = 0;
    std::uint64_t free = r;
    for (std::uint64_t b = r; b != 0; b &= b - 1) {
      const int v = std::countr_zero(b);
      if (!((free >> v) & 1U)) continue;
      const std::uint64_t cand = adj_[v] & free & ~bit(v);
      if (cand == 0) continue;
      free &= ~(bit(v) | bit(std::countr_zero(cand)));
      ++size;
    }
    return size;
  }

  // Every vertex of G[r] has degree 2: sum of ceil(L/2) over cycles.
  int cycle_cover(std::uint64_t r) const {
    int total = 0;
    while (r != 0) {
      std::uint64_t comp = bit(std::countr_zero(r));
      for (std::uint64_t frontier = comp; frontier != 0;) {
        std::uint64_t next = 0;
        for (std::uint64_t b = frontier; b != 0; b &= b - 1) next |= adj_[std::countr_zero(b)] & r;
        frontier = next & ~comp;
        comp |= next;
      }
      total += (std::popcount(comp) + 1) / 2;
      r &= ~comp;
    }
    return total;
  }

  const std::vector<std::uint64_t>& adj_;
};

// Minimum weight vertex cover value of G[R] for nonnegative weights.
class WeightedCover {
 public:
  WeightedCover(const std::vector<std::uint64_t>& adj, const WeightVector& w) : adj_(adj), w_(w) {}

  double solve(std::uint64_t r, double ub) const {
    double forced = 0.0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::uint64_t b = r; b != 0; b &= b - 1) {
        const int v = std::countr_zero(b);
        if (!((r >> v) & 1U)) continue;
        const std::uint64_t nv = adj_[v] & r;
        if (nv == 0) {
          r &= ~bit(v);
        } else if (w_[v] <= 0.0) {
          r &= ~bit(v);
          changed = true;
        } else if ((nv & (nv - 1)) == 0 && w_[std::countr_zero(nv)] <= w_[v]) {
          forced += w_[std::countr_zero(nv)];
          r &= ~(nv | bit(v));
          changed = true;
        }
      }
    }
    if (r == 0) return forced;
    if (forced + matching_bound(r) >= ub) return std::max(ub, forced);

    int best_v = -1;
    int best_deg = 0;
    for (std::uint64_t b = r; b != 0; b &= b - 1) {
      const int v = std::countr_zero(b);
      const int d = std::popcount(adj_[v] & r);
      if (d > best_deg || (d == best_deg && w_[v] > w_[best_v])) {
        best_deg = d;
        best_v = v;
      }
    }
    double best = ub - forced;
    const std::uint64_t nv = adj_[best_v] & r;
    const double take_v = w_[best_v] + solve(r & ~bit(best_v), best - w_[best_v]);
    if (take_v < best) best = take_v;
    double nweight = 0.0;
    for (std::uint64_t b = nv; b != 0; b &= b - 1) nweight += w_[std::countr_zero(b)];
    if (nweight < best) {
      const double take_n = nweight + solve(r & ~(nv | bit(best_v)), best - nweight);
      if (take_n < best) best = take_n;
    }
    return forced + best;
  }

 private:
  double matching_bound(std::uint64_t r) const {
    double total = 0.0;
    std::uint64_t free = r;
    for (std::uint64_t b = r; b != 0; b &= b - 1) {
      const int v = std::countr_zero(b);
      if (!((free >> v) & 1U)) continue;
      const std::uint64_t cand = adj_[v] & free & ~bit(v);
      if (cand == 0) continue;
      const int u = std::countr_zero(cand);
      free &= ~(bit(v) | bit(u));
      total += std::min(w_[u], w_[v]);
    }
    return total;
  }

  const std::vector<std::uint64_t>& adj_;
  const WeightVector& w_;
};

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

// Smallest cover size among covers S with include ⊆ S and S ∩ exclude = ∅.
inline double constrained_cover_size(const Graph& g, VertexSet include, VertexSet exclude) {
  VertexSet in = include;
  for (const Edge& e : g.edges()) {
    const bool xu = exclude.contains(e.u), xv = exclude.contains(e.v);
    if (xu && xv) return kInfeasible;
    if (xu) in.insert(e.v);
    if (xv) in.insert(e.u);
  }
  if (!(in & exclude).empty()) return kInfeasible;
  const std::uint64_t rest = (g.touched() - in - exclude).bits();
  CardinalityCover solver(g.adjacency());
  return in.size() + solver.solve(rest, g.n() + 1);
}

inline double constrained_cover_weight(const Graph& g, const WeightVector& w, VertexSet include,
                                       VertexSet exclude) {
  VertexSet in = include;
  for (const Edge& e : g.edges()) {
    const bool xu = exclude.contains(e.u), xv = exclude.contains(e.v);
    if (xu && xv) return kInfeasible;
    if (xu) in.insert(e.v);
    if (xv) in.insert(e.u);
  }
  if (!(in & exclude).empty()) return kInfeasible;
  double base = 0.0;
  in.for_each([&](int v) { base += w[v]; });
  const std::uint64_t rest = (g.touched() - in - exclude).bits();
  WeightedCover solver(g.adjacency(), w);
  return base + solver.solve(rest, std::numeric_limits<double>::infinity());
}

inline bool weight_close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace detail

// τ(g): exact minimum vertex cover size.
inline int mvc_size(const Graph& g) {
  detail::CardinalityCover solver(g.adjacency());
  return solver.solve(g.touched().bits(), g.n() + 1);
}

// The lexicographically smallest minimum vertex cover. Minimum covers all have
// size τ, so lexicographic order reduces to preferring inclusion of the lowest
// undecided vertex; each decision is confirmed with a constrained exact solve.
inline VertexSet mvc_canonical(const Graph& g) {
  const int tau = mvc_size(g);
  VertexSet include, exclude;
  for (int v = 0; v < g.n() && include.size() < tau; ++v) {
    VertexSet with_v = include;
    with_v.insert(v);
    if (detail::constrained_cover_size(g, with_v, exclude) <= tau)
      include = with_v;
    else
      exclude.insert(v);
  }
  return include;
}

inline double total_weight(VertexSet s, const WeightVector& w) {
  double total = 0.0;
  s.for_each([&](int v) { total += w[v]; });
  return total;
}

// Minimum weight vertex cover, lexicographically smallest among optima.
// Negative weights are allowed; such vertices are in every optimum.
inline VertexSet min_weight_vc(const Graph& g, const WeightVector& w) {
  if (static_cast<int>(w.size()) != g.n())
    fail(ErrorCode::DimensionMismatch, "weight vector length " + std::to_string(w.size()) +
                                           " for n=" + std::to_string(g.n()));
  for (double x : w)
    if (!std::isfinite(x)) fail(ErrorCode::ParamOutOfRange, "non-finite vertex weight");

  VertexSet include;
  for (int v = 0; v < g.n(); ++v)
    if (w[v] < 0.0) include.insert(v);
  const double best = detail::constrained_cover_weight(g, w, include, VertexSet{});

  VertexSet exclude;
  for (int v = 0; v < g.n(); ++v) {
    if (g.is_cover(include) && detail::weight_close(total_weight(include, w), best)) return include;
    if (include.contains(v)) continue;
    VertexSet with_v = include;
    with_v.insert(v);
    if (detail::weight_close(detail::constrained_cover_weight(g, w, with_v, exclude), best))
      include = with_v;
    else
      exclude.insert(v);
  }
  return include;
}

// Endpoints of the maximal matching built by scanning edge_order greedily.
inline VertexSet greedy_matching_cover(const Graph& g, const std::vector<Edge>& edge_order) {
  std::vector<Edge> normalized;
  normalized.reserve(edge_order.size());
  for (const Edge& e : edge_order) normalized.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  std::vector<Edge> sorted = normalized;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != g.edges())
    fail(ErrorCode::InvalidGraph, "edge order is not a permutation of the graph's edges");
  VertexSet matched;
  for (const Edge& e : normalized) {
    if (!matched.contains(e.u) && !matched.contains(e.v)) {
      matched.insert(e.u);
      matched.insert(e.v);
    }
  }
  return matched;
}

inline VertexSet greedy_matching_cover(const Graph& g) { return greedy_matching_cover(g, g.edges()); }

// All inclusion-minimal vertex covers, i.e. complements of the maximal
// independent sets (Bron–Kerbosch with pivoting on the complement graph).
// Sorted by bitmask.
inline std::vector<VertexSet> enumerate_minimal_vertex_covers(const Graph& g,
                                                              int cap = kDefaultEnumerationCap) {
  if (g.n() > cap)
    fail(ErrorCode::CapExceeded, "minimal cover enumeration limited to " + std::to_string(cap) +
                                     " vertices, got " + std::to_string(g.n()));
  const int n = g.n();
  const std::uint64_t all = VertexSet::all(n).bits();
  std::vector<std::uint64_t> non_adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) non_adj[v] = all & ~g.adjacency()[v] & ~detail::bit(v);

  std::vector<VertexSet> covers;
  auto expand = [&](auto&& self, std::uint64_t r, std::uint64_t p, std::uint64_t x) -> void {
    if (p == 0 && x == 0) {
      covers.emplace_back(all & ~r);
      return;
    }
    int pivot = -1;
    int pivot_score = -1;
    for (std::uint64_t b = p | x; b != 0; b &= b - 1) {
      const int u = std::countr_zero(b);
      const int score = std::popcount(p & non_adj[u]);
      if (score > pivot_score) {
        pivot_score = score;
        pivot = u;
      }
    }
    for (std::uint64_t b = p & ~non_adj[pivot]; b != 0; b &= b - 1) {
      const int v = std::countr_zero(b);
      self(self, r | detail::bit(v), p & non_adj[v], x & non_adj[v]);
      p &= ~detail::bit(v);
      x |= detail::bit(v);
    }
  };
  expand(expand, 0, all, 0);
  std::sort(covers.begin(), covers.end(),
            [](VertexSet a, VertexSet b) { return a.bits() < b.bits(); });
  return covers;
}

}  // namespace mvcomm
