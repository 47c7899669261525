#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/game.hpp"
#include "mvcomm/graph.hpp"
#include "mvcomm/partitioned_instance.hpp"

// Plain-text formats, whitespace separated, ASCII:
//   graph        "n m" then m lines "u v"
//   distribution "dist n k" then k times: a probability line and a graph block
//   game         "game beta eps o", a graph block (e_a), "candidates c", c graph blocks
//   candidates   "candidates c" then c graph blocks
//   partitioned  "kparts k n" then k graph blocks
namespace mvcomm {

// Shortest round-trip decimal representation, locale independent.
inline std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string word(const char* what) {
    std::string tok;
    if (!(in_ >> tok)) fail(ErrorCode::ParseError, std::string("unexpected end of input, expected ") + what);
    return tok;
  }

  void expect(const std::string& keyword) {
    const std::string tok = word(keyword.c_str());
    if (tok != keyword) fail(ErrorCode::ParseError, "expected '" + keyword + "', got '" + tok + "'");
  }

  long integer(const char* what) {
    const std::string tok = word(what);
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      fail(ErrorCode::ParseError, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
  }

  double real(const char* what) {
    const std::string tok = word(what);
    double value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      fail(ErrorCode::ParseError, std::string("expected number ") + what + ", got '" + tok + "'");
    return value;
  }

  bool at_end() {
    in_ >> std::ws;
    return in_.eof();
  }

 private:
  std::istream& in_;
};

inline Graph read_graph_block(TokenReader& r) {
  const long n = r.integer("vertex count");
  const long m = r.integer("edge count");
  if (n < 0 || n > kMaxVertices) fail(ErrorCode::ParseError, "vertex count out of range");
  if (m < 0) fail(ErrorCode::ParseError, "negative edge count");
  std::vector<Edge> edges;
  for (long i = 0; i < m; ++i) {
    const long u = r.integer("edge endpoint");
    const long v = r.integer("edge endpoint");
    if (u == v) fail(ErrorCode::ParseError, "self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n) fail(ErrorCode::ParseError, "edge endpoint out of range");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  return Graph(static_cast<int>(n), edges);
}

inline std::vector<Graph> read_graph_list(TokenReader& r, long count) {
  if (count < 0) fail(ErrorCode::ParseError, "negative block count");
  std::vector<Graph> out;
  for (long i = 0; i < count; ++i) out.push_back(read_graph_block(r));
  return out;
}

}  // namespace detail

inline void write_graph(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

inline Graph read_graph(std::istream& in) {
  detail::TokenReader r(in);
  return detail::read_graph_block(r);
}

inline void write_distribution(std::ostream& os, const GraphDistribution& d) {
  os << "dist " << d.n() << ' ' << d.size() << '\n';
  for (const WeightedGraph& wg : d.support()) {
    os << format_real(wg.probability) << '\n';
    write_graph(os, wg.graph);
  }
}

inline GraphDistribution read_distribution(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("dist");
  const long n = r.integer("vertex count");
  const long k = r.integer("support size");
  if (k <= 0) fail(ErrorCode::ParseError, "distribution needs a nonempty support");
  std::vector<WeightedGraph> support;
  for (long i = 0; i < k; ++i) {
    const double p = r.real("probability");
    Graph g = detail::read_graph_block(r);
    if (g.n() != n) fail(ErrorCode::DimensionMismatch, "support graph vertex count differs from header");
    support.push_back({std::move(g), p});
  }
  return GraphDistribution(static_cast<int>(n), std::move(support));
}

inline void write_candidates(std::ostream& os, const std::vector<Graph>& cands) {
  os << "candidates " << cands.size() << '\n';
  for (const Graph& g : cands) write_graph(os, g);
}

inline std::vector<Graph> read_candidates(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("candidates");
  return detail::read_graph_list(r, r.integer("candidate count"));
}

inline void write_game_spec(std::ostream& os, const MvcGameSpec& spec) {
  os << "game " << format_real(spec.beta) << ' ' << format_real(spec.eps) << ' ' << format_real(spec.o) << '\n';
  write_graph(os, spec.e_a);
  write_candidates(os, spec.adversary_candidates);
}

inline MvcGameSpec read_game_spec(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("game");
  MvcGameSpec spec;
  spec.beta = r.real("beta");
  spec.eps = r.real("eps");
  spec.o = r.real("o");
  spec.e_a = detail::read_graph_block(r);
  r.expect("candidates");
  spec.adversary_candidates = detail::read_graph_list(r, r.integer("candidate count"));
  return spec;
}

inline void write_partitioned(std::ostream& os, const PartitionedInstance& inst) {
  os << "kparts " << inst.k() << ' ' << inst.n << '\n';
  for (const Graph& g : inst.parts) write_graph(os, g);
}

inline PartitionedInstance read_partitioned(std::istream& in) {
  detail::TokenReader r(in);
  r.expect("kparts");
  const long k = r.integer("party count");
  const long n = r.integer("vertex count");
  if (k < 1) fail(ErrorCode::ParseError, "party count must be positive");
  PartitionedInstance inst{static_cast<int>(n), detail::read_graph_list(r, k)};
  inst.validate();
  return inst;
}

template <typename T, typename Reader>
T load_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  return reader(in);
}

inline Graph load_graph(const std::string& path) { return load_file<Graph>(path, [](std::istream& in) { return read_graph(in); }); }
inline GraphDistribution load_distribution(const std::string& path) {
  return load_file<GraphDistribution>(path, [](std::istream& in) { return read_distribution(in); });
}
inline MvcGameSpec load_game_spec(const std::string& path) {
  return load_file<MvcGameSpec>(path, [](std::istream& in) { return read_game_spec(in); });
}
inline std::vector<Graph> load_candidates(const std::string& path) {
  return load_file<std::vector<Graph>>(path, [](std::istream& in) { return read_candidates(in); });
}
inline PartitionedInstance load_partitioned(const std::string& path) {
  return load_file<PartitionedInstance>(path, [](std::istream& in) { return read_partitioned(in); });
}

}  // namespace mvcomm
