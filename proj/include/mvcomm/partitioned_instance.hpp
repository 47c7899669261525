#pragma once

#include <string>
#include <vector>

#include "mvcomm/error.hpp"
#include "mvcomm/graph.hpp"

namespace mvcomm {

// The base graph's edges split among k parties; part i-1 belongs to party i.
struct PartitionedInstance {
  int n = 0;
  std::vector<Graph> parts;

  int k() const { return static_cast<int>(parts.size()); }

  void validate() const {
    if (parts.empty()) fail(ErrorCode::InvalidGraph, "partitioned instance needs at least one part");
    for (const Graph& g : parts)
      if (g.n() != n)
        fail(ErrorCode::DimensionMismatch, "part has n=" + std::to_string(g.n()) + ", expected " + std::to_string(n));
  }

  Graph base() const { return graph_union(parts, n); }

  // Union of the parts of parties first..last (1-based, inclusive).
  Graph union_of(int first, int last) const {
    std::vector<Graph> sel;
    for (int i = first; i <= last && i <= k(); ++i)
      if (i >= 1) sel.push_back(parts[i - 1]);
    return sel.empty() ? Graph(n) : graph_union(sel, n);
  }
};

}  // namespace mvcomm
