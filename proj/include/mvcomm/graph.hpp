#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mvcomm/error.hpp"
#include "mvcomm/vertex_set.hpp"

namespace mvcomm {

struct Edge {
  int u = 0;
  int v = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on vertices [0, n). Edges are stored normalized
// (u < v), sorted and deduplicated, so equal edge sets compare equal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(check_n(n)), adj_(static_cast<std::size_t>(n), 0) {}
  Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.u == e.v) fail(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(e.u));
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        fail(ErrorCode::InvalidGraph, "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                          ") out of range for n=" + std::to_string(n));
      edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) {
      adj_[e.u] |= std::uint64_t{1} << e.v;
      adj_[e.v] |= std::uint64_t{1} << e.u;
    }
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool has_edges() const { return !edges_.empty(); }
  VertexSet vertices() const { return VertexSet::all(n_); }
  VertexSet neighbors(int v) const { return VertexSet(adj_[v]); }
  const std::vector<std::uint64_t>& adjacency() const { return adj_; }
  int degree(int v) const { return neighbors(v).size(); }
  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1U; }

  // Vertices incident to at least one edge.
  VertexSet touched() const {
    VertexSet s;
    for (const Edge& e : edges_) {
      s.insert(e.u);
      s.insert(e.v);
    }
    return s;
  }

  bool is_cover(VertexSet s) const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return s.contains(e.u) || s.contains(e.v); });
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  static int check_n(int n) {
    if (n < 0 || n > kMaxVertices)
      fail(ErrorCode::InvalidGraph, "vertex count " + std::to_string(n) + " outside [0, 64]");
    return n;
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adj_;
};

inline void require_same_n(const Graph& a, const Graph& b, const char* what) {
  if (a.n() != b.n())
    fail(ErrorCode::DimensionMismatch, std::string(what) + ": vertex counts " +
                                           std::to_string(a.n()) + " and " + std::to_string(b.n()));
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  require_same_n(a, b, "graph_union");
  std::vector<Edge> edges = a.edges();
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return Graph(a.n(), edges);
}

inline Graph graph_union(const std::vector<Graph>& parts, int n) {
  std::vector<Edge> edges;
  for (const Graph& g : parts) {
    if (g.n() != n) fail(ErrorCode::DimensionMismatch, "graph_union: part with different n");
    edges.insert(edges.end(), g.edges().begin(), g.edges().end());
  }
  return Graph(n, edges);
}

// Edges of g with neither endpoint in s.
inline Graph residual_graph(const Graph& g, VertexSet s) {
  std::vector<Edge> kept;
  for (const Edge& e : g.edges())
    if (!s.contains(e.u) && !s.contains(e.v)) kept.push_back(e);
  return Graph(g.n(), kept);
}

// Edges of a that are not edges of b (same n).
inline Graph graph_difference(const Graph& a, const Graph& b) {
  require_same_n(a, b, "graph_difference");
  std::vector<Edge> kept;
  for (const Edge& e : a.edges())
    if (!b.has_edge(e.u, e.v)) kept.push_back(e);
  return Graph(a.n(), kept);
}

inline bool edge_subset(const Graph& a, const Graph& b) {
  return a.n() == b.n() && std::all_of(a.edges().begin(), a.edges().end(),
                                       [&](const Edge& e) { return b.has_edge(e.u, e.v); });
}

}  // namespace mvcomm
