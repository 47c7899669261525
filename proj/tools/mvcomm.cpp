#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvcomm/mvcomm.hpp"

namespace {

using namespace mvcomm;

// Writes to `path`, or stdout when path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const std::string& chunk : raw) {
    std::istringstream in(chunk);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      const auto eq = tok.find('=');
      if (eq == std::string::npos) fail(ErrorCode::ParamOutOfRange, "expected key=value, got '" + tok + "'");
      out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  return out;
}

template <typename T>
T param(const std::map<std::string, std::string>& params, const std::string& key, T fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::istringstream in(it->second);
  in.imbue(std::locale::classic());
  T value{};
  if (!(in >> value) || !in.eof()) fail(ErrorCode::ParamOutOfRange, "bad value for " + key + ": " + it->second);
  return value;
}

std::string cover_line(VertexSet s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

int cmd_solve(const std::string& graph_path, const std::string& weights) {
  const Graph g = load_graph(graph_path);
  std::cout << "n " << g.n() << "\nedges " << g.num_edges() << "\nmvc_size " << mvc_size(g) << "\nmvc "
            << cover_line(mvc_canonical(g)) << '\n';
  if (!weights.empty()) {
    WeightVector w;
    std::istringstream in(weights);
    in.imbue(std::locale::classic());
    std::string tok;
    while (std::getline(in, tok, ',')) w.push_back(std::stod(tok));
    const VertexSet x = min_weight_vc(g, w);
    std::cout << "min_weight " << format_real(total_weight(x, w)) << "\nmin_weight_vc " << cover_line(x) << '\n';
  }
  return 0;
}

struct RunProtocolArgs {
  std::string instance, dist, candidates, out, mode = "oracle";
  int k = 2;
  double eps = 0.1;
  std::uint64_t seed = 0;
  int auto_candidates = 8;
};

int cmd_run_protocol(const RunProtocolArgs& a) {
  const PartitionedInstance inst = load_partitioned(a.instance);
  const ProtocolConfig cfg{a.k, a.eps, parse_mode(a.mode), a.seed};
  std::optional<GraphDistribution> dist;
  std::optional<std::vector<Graph>> cands;
  if (!a.dist.empty()) dist = load_distribution(a.dist);
  if (!a.candidates.empty()) cands = load_candidates(a.candidates);

  RunRow row;
  row.instance_id = std::filesystem::path(a.instance).stem().string();
  row.k = cfg.k;
  row.eps = cfg.eps;
  row.mode = cfg.mode;
  row.seed = cfg.seed;
  row.n = inst.n;
  const auto start = std::chrono::steady_clock::now();
  const ProtocolReport rep = run_with_defaults(inst, cfg, dist, cands, a.auto_candidates);
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.opt = rep.opt;
  row.output_size = rep.output_size;
  row.ratio = rep.ratio;
  row.total_comm_bits = rep.total_comm_bits;
  row.round_bits = rep.round_bits;
  row.valid = rep.valid;
  if (!rep.ratio_defined) row.status = "invalid-ratio";
  emit(a.out, std::string(kRunCsvHeader) + "\n" + csv_row(row) + "\n");
  return rep.valid ? 0 : 1;
}

int cmd_game_solve(const std::string& path, double tol, long max_iters) {
  const MvcGameSpec spec = load_game_spec(path);
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iters = max_iters;
  const GameSolution sol = solve_game(spec, opts);
  std::cout << "value " << format_real(sol.value) << "\ngap " << format_real(sol.gap) << "\niterations "
            << sol.iterations << "\nconverged " << (sol.converged ? "true" : "false") << "\nalice "
            << sol.alice.support.size() << '\n';
  for (const auto& [x, p] : sol.alice.support) std::cout << format_real(p) << ' ' << cover_line(x) << '\n';
  return 0;
}

int cmd_verify_lemmas(int trials, std::uint64_t seed, std::optional<double> beta, const std::string& out) {
  const LemmaReport rep = verify_lemmas(trials, seed, beta);
  emit(out, rep.csv());
  if (rep.failures > 0) std::cerr << rep.failures << " failing checks\n";
  return rep.failures == 0 ? 0 : 1;
}

int cmd_gen_instance(const std::string& family, const std::vector<std::string>& raw_params, std::uint64_t seed,
                     const std::string& out) {
  const auto params = parse_params(raw_params);
  PartitionedInstance inst;
  if (family == "random") {
    inst = random_partitioned_instance(param(params, "n", 10), param(params, "p", 0.3), param(params, "k", 2), seed);
  } else if (family == "layered") {
    inst = layered_instance(param(params, "m", 2)).instance;
  } else if (family == "rs") {
    const RsGraph rs = find_rs_graph(param(params, "n_side", 8), param(params, "k_m", 4), param(params, "match_size", 3),
                                     derive_seed(seed, 1));
    const RsInstanceFamily fam{rs, param(params, "eps2", 0.3)};
    inst = rs_lower_bound_instance(fam, derive_seed(seed, 2)).instance;
  } else {
    fail(ErrorCode::ParamOutOfRange, "unknown family '" + family + "'");
  }
  std::ostringstream os;
  write_partitioned(os, inst);
  emit(out, os.str());
  return 0;
}

int cmd_bench(const std::string& plan_path, std::uint64_t seed, const std::string& out, bool no_runtime) {
  std::ifstream in(plan_path);
  if (!in) fail(ErrorCode::InvalidPlan, "cannot open plan " + plan_path);
  const ExperimentPlan plan = parse_plan(in, seed);
  const ExperimentResult res = run_experiment(plan);
  emit(out, res.csv(!no_runtime));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex cover under one-way multi-party communication"};
  app.require_subcommand(1);

  std::string graph_path, weights;
  auto* solve = app.add_subcommand("solve", "Exact minimum (weighted) vertex cover of a graph file");
  solve->add_option("--graph", graph_path, "graph file")->required();
  solve->add_option("--weights", weights, "comma-separated vertex weights");

  RunProtocolArgs rp;
  auto* run = app.add_subcommand("run-protocol", "Run the k-party protocol on a partitioned instance");
  run->add_option("--instance", rp.instance, "partitioned instance file")->required();
  run->add_option("--k", rp.k, "number of parties")->required();
  run->add_option("--epsilon", rp.eps, "accuracy parameter")->required();
  run->add_option("--mode", rp.mode, "oracle|game");
  run->add_option("--dist", rp.dist, "distribution file of future unions (oracle mode)");
  run->add_option("--candidates", rp.candidates, "candidate file of future unions (game mode)");
  run->add_option("--auto-candidates", rp.auto_candidates, "random future subsets when no candidate file is given");
  run->add_option("--seed", rp.seed, "root seed");
  run->add_option("--out", rp.out, "CSV output path");

  std::string spec_path;
  double tol = 1e-6;
  long max_iters = 100000;
  auto* game = app.add_subcommand("game-solve", "Solve an MVC game spec");
  game->add_option("--spec", spec_path, "game spec file")->required();
  game->add_option("--tol", tol, "duality gap tolerance");
  game->add_option("--max-iters", max_iters, "fictitious-play iteration cap");

  int trials = 1000;
  std::uint64_t lemma_seed = 1;
  std::optional<double> lemma_beta;
  std::string lemma_out;
  auto* lemmas = app.add_subcommand("verify-lemmas", "Randomized checks of the cover-weight and middle-region lemmas");
  lemmas->add_option("--trials", trials, "trials per lemma");
  lemmas->add_option("--seed", lemma_seed, "seed");
  lemmas->add_option("--beta", lemma_beta, "force this beta in every weight-bound check");
  lemmas->add_option("--out", lemma_out, "CSV output path");

  std::string family = "random", gen_out;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen-instance", "Generate a partitioned instance");
  gen->add_option("--family", family, "layered|rs|random");
  gen->add_option("--params", gen_params,
                  "key=value list: random n,p,k; layered m; rs n_side,k_m,match_size,eps2");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "output path");

  std::string plan_path, bench_out;
  std::uint64_t bench_seed = 1;
  bool no_runtime = false;
  auto* bench = app.add_subcommand("bench", "Run an experiment plan and emit CSV with a summary block");
  bench->add_option("--plan", plan_path, "plan file, one run per line")->required();
  bench->add_option("--seed", bench_seed, "root seed");
  bench->add_option("--out", bench_out, "CSV output path");
  bench->add_flag("--no-runtime", no_runtime, "omit the runtime_ms column");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(graph_path, weights);
    if (*run) return cmd_run_protocol(rp);
    if (*game) return cmd_game_solve(spec_path, tol, max_iters);
    if (*lemmas) return cmd_verify_lemmas(trials, lemma_seed, lemma_beta, lemma_out);
    if (*gen) return cmd_gen_instance(family, gen_params, gen_seed, gen_out);
    if (*bench) return cmd_bench(plan_path, bench_seed, bench_out, no_runtime);
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
