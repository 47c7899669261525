#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mvcomm/distribution.hpp"
#include "mvcomm/error.hpp"
#include "mvcomm/instances.hpp"
#include "mvcomm/lemma_checks.hpp"
#include "mvcomm/protocol.hpp"
#include "mvcomm/rng.hpp"
#include "mvcomm/text_format.hpp"

namespace mvcomm {

// 12 significant digits, '.' separator, independent of the global locale.
inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

enum class InstanceFamily { File, Random, Layered };

// One line of a plan file, e.g.
//   id=er10 family=random n=10 p=0.3 k=2 eps=0.1 mode=oracle reps=20
//   id=fig2 family=layered m=3 k=3 eps=0.02 mode=game reps=2
//   id=mine instance=g.txt k=2 eps=0.1 mode=oracle dist=d.txt
struct PlannedRun {
  std::string id;
  InstanceFamily family = InstanceFamily::Random;
  std::string instance_path;
  int n = 8;
  double edge_prob = 0.3;
  int m = 2;
  int k = 2;
  double eps = 0.1;
  ProtocolMode mode = ProtocolMode::Oracle;
  std::string dist_path;        // oracle mode; absent: parties know the realized future
  std::string candidates_path;  // game mode; absent: random subsets of the realized future
  int auto_candidates = 8;
  int repetitions = 1;
};

struct ExperimentPlan {
  std::vector<PlannedRun> runs;
  std::uint64_t root_seed = 0;
};

namespace detail {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail(ErrorCode::InvalidPlan, "bad value '" + value + "' for " + key);
  return out;
}

}  // namespace detail

inline ExperimentPlan parse_plan(std::istream& in, std::uint64_t root_seed) {
  ExperimentPlan plan;
  plan.root_seed = root_seed;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    PlannedRun run;
    bool any = false;
    while (fields >> tok) {
      any = true;
      const auto eq = tok.find('=');
      if (eq == std::string::npos) fail(ErrorCode::InvalidPlan, "line " + std::to_string(line_no) + ": expected key=value, got '" + tok + "'");
      const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
      if (key == "id") run.id = value;
      else if (key == "instance") { run.family = InstanceFamily::File; run.instance_path = value; }
      else if (key == "family") {
        if (value == "random") run.family = InstanceFamily::Random;
        else if (value == "layered") run.family = InstanceFamily::Layered;
        else if (value == "file") run.family = InstanceFamily::File;
        else fail(ErrorCode::InvalidPlan, "unknown family '" + value + "'");
      }
      else if (key == "n") run.n = detail::parse_number<int>(key, value);
      else if (key == "p") run.edge_prob = detail::parse_number<double>(key, value);
      else if (key == "m") run.m = detail::parse_number<int>(key, value);
      else if (key == "k") run.k = detail::parse_number<int>(key, value);
      else if (key == "eps") run.eps = detail::parse_number<double>(key, value);
      else if (key == "mode") run.mode = parse_mode(value);
      else if (key == "dist") run.dist_path = value;
      else if (key == "candidates") run.candidates_path = value;
      else if (key == "auto_candidates") run.auto_candidates = detail::parse_number<int>(key, value);
      else if (key == "reps") run.repetitions = detail::parse_number<int>(key, value);
      else fail(ErrorCode::InvalidPlan, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!any) continue;
    if (run.repetitions < 1) fail(ErrorCode::InvalidPlan, "line " + std::to_string(line_no) + ": reps must be >= 1");
    if (run.id.empty()) run.id = "run" + std::to_string(plan.runs.size() + 1);
    plan.runs.push_back(std::move(run));
  }
  return plan;
}

struct RunRow {
  std::string instance_id;
  int k = 0;
  double eps = 0.0;
  ProtocolMode mode = ProtocolMode::Oracle;
  std::uint64_t seed = 0;
  int n = 0;
  int opt = 0;
  int output_size = 0;
  double ratio = 0.0;
  std::uint64_t total_comm_bits = 0;
  std::vector<std::uint64_t> round_bits;
  bool valid = false;
  std::string status = "ok";
  double runtime_ms = 0.0;
};

inline const char* kRunCsvHeader =
    "instance_id,k,epsilon,mode,seed,n,opt,output_size,ratio,total_comm_bits,round_bits,valid,status,runtime_ms";

inline std::string csv_row(const RunRow& r, bool with_runtime = true) {
  std::ostringstream os;
  os << r.instance_id << ',' << r.k << ',' << csv_number(r.eps) << ',' << to_string(r.mode) << ',' << r.seed << ','
     << r.n << ',' << r.opt << ',' << r.output_size << ',' << csv_number(r.ratio) << ',' << r.total_comm_bits << ',';
  for (std::size_t i = 0; i < r.round_bits.size(); ++i) os << (i ? ";" : "") << r.round_bits[i];
  os << ',' << (r.valid ? "true" : "false") << ',' << r.status;
  if (with_runtime) os << ',' << csv_number(r.runtime_ms);
  return os.str();
}

// Protocol run against a realized instance with the mode's default adversary
// model: the oracle knows the distribution (or the realized future); game
// mode draws random sub-families of the realized future.
inline ProtocolReport run_with_defaults(const PartitionedInstance& inst, const ProtocolConfig& cfg,
                                        const std::optional<GraphDistribution>& dist,
                                        const std::optional<std::vector<Graph>>& candidates, int auto_candidates) {
  if (cfg.mode == ProtocolMode::Oracle) {
    OracleStrategy oracle(dist ? FutureDistribution::from_unions(*dist) : FutureDistribution::truth(inst), inst);
    return run_protocol(inst, cfg, std::ref(oracle));
  }
  std::vector<std::vector<Graph>> families;
  if (candidates) {
    families = GameStrategy::from_union_family(*candidates, inst);
  } else {
    Rng rng(derive_seed(cfg.seed, 0xfa3117));
    for (int i = 1; i < inst.k(); ++i) {
      const Graph future = inst.union_of(i + 1, inst.k());
      std::vector<Graph> fam{future};
      for (int c = 1; c < auto_candidates; ++c) fam.push_back(random_subgraph(future, 0.5, rng));
      families.push_back(std::move(fam));
    }
  }
  GameStrategy game(std::move(families), cfg.eps);
  return run_protocol(inst, cfg, std::ref(game));
}

struct ExperimentResult {
  std::vector<RunRow> rows;

  std::string csv(bool with_runtime = true) const {
    std::ostringstream os;
    std::string header = kRunCsvHeader;
    if (!with_runtime) header.erase(header.rfind(','));
    os << header << '\n';
    for (const RunRow& r : rows) os << csv_row(r, with_runtime) << '\n';
    if (rows.empty()) return os.str();

    struct Acc {
      int runs = 0;
      double sum = 0.0, max = 0.0;
      std::uint64_t bits = 0;
    };
    std::map<std::pair<int, double>, Acc> groups;
    for (const RunRow& r : rows) {
      if (r.status != "ok") continue;
      Acc& a = groups[{r.k, r.eps}];
      ++a.runs;
      a.sum += r.ratio;
      a.max = std::max(a.max, r.ratio);
      a.bits += r.total_comm_bits;
    }
    os << "\n# summary\nk,epsilon,runs,mean_ratio,max_ratio,total_comm_bits,theory_bound\n";
    for (const auto& [key, a] : groups) {
      const double bound = 2.0 - std::ldexp(1.0, 1 - key.first) + 5.0 * key.second;
      os << key.first << ',' << csv_number(key.second) << ',' << a.runs << ',' << csv_number(a.runs ? a.sum / a.runs : 0.0)
         << ',' << csv_number(a.max) << ',' << a.bits << ',' << csv_number(bound) << '\n';
    }
    return os.str();
  }
};

// Runs every repetition of every planned run in plan order. A failing run is
// reported in its row's status column and does not stop the sweep.
inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
  ExperimentResult result;
  for (std::size_t ri = 0; ri < plan.runs.size(); ++ri) {
    const PlannedRun& run = plan.runs[ri];
    for (int rep = 0; rep < run.repetitions; ++rep) {
      RunRow row;
      row.instance_id = run.id + "#" + std::to_string(rep);
      row.k = run.k;
      row.eps = run.eps;
      row.mode = run.mode;
      row.seed = derive_seed(plan.root_seed, ri, rep);
      const auto start = std::chrono::steady_clock::now();
      try {
        PartitionedInstance inst;
        switch (run.family) {
          case InstanceFamily::File: inst = load_partitioned(run.instance_path); break;
          case InstanceFamily::Random:
            inst = random_partitioned_instance(run.n, run.edge_prob, run.k, derive_seed(row.seed, 0x1257));
            break;
          case InstanceFamily::Layered: inst = layered_instance(run.m).instance; break;
        }
        row.n = inst.n;
        std::optional<GraphDistribution> dist;
        std::optional<std::vector<Graph>> cands;
        if (!run.dist_path.empty()) dist = load_distribution(run.dist_path);
        if (!run.candidates_path.empty()) cands = load_candidates(run.candidates_path);
        const ProtocolConfig cfg{run.k, run.eps, run.mode, row.seed};
        const ProtocolReport rep_out = run_with_defaults(inst, cfg, dist, cands, run.auto_candidates);
        row.opt = rep_out.opt;
        row.output_size = rep_out.output_size;
        row.ratio = rep_out.ratio;
        row.total_comm_bits = rep_out.total_comm_bits;
        row.round_bits = rep_out.round_bits;
        row.valid = rep_out.valid;
        if (!rep_out.ratio_defined) row.status = "invalid-ratio";
      } catch (const std::exception& e) {
        row.status = std::string("error:") + e.what();
        std::replace(row.status.begin(), row.status.end(), ',', ';');
        std::replace(row.status.begin(), row.status.end(), '\n', ' ');
      }
      row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

// Support functions satisfying the middle-region condition. Mirrored draws
// put at least as much y-mass at 1-q as there is at every low point q;
// rejection draws are fully random and kept only when the condition holds.
inline SupportFunction random_satisfying_support(Rng& rng) {
  for (;;) {
    std::vector<std::pair<double, double>> pts;
    const int size = 1 + static_cast<int>(uniform_below(rng, 6));
    if (bernoulli(rng, 0.5)) {
      for (int s = 0; s < size; ++s) {
        const double q = 0.01 + 0.49 * uniform01(rng);
        const double wq = uniform01(rng) * 3.0;
        pts.emplace_back(q, wq);
        pts.emplace_back(1.0 - q, wq * q / (1.0 - q) * (1.0 + uniform01(rng)));
      }
    } else {
      for (int s = 0; s < size; ++s) pts.emplace_back(1e-3 + (1.0 - 1e-3) * uniform01(rng), uniform01(rng) * 3.0);
    }
    SupportFunction w(std::move(pts));
    if (middle_region_check(w).condition_holds) return w;
  }
}

struct LemmaRow {
  std::string lemma;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string holds;  // "true", "false" or "error:<code>"
};

struct LemmaReport {
  std::vector<LemmaRow> rows;
  int failures = 0;

  std::string csv() const {
    std::ostringstream os;
    os << "lemma,params,lhs,rhs,holds\n";
    for (const LemmaRow& r : rows)
      os << r.lemma << ',' << r.params << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << r.holds << '\n';
    return os.str();
  }
};

// Randomized suites for the vertex-cover-weight bound and the middle-region
// inequality: one row per lemma per trial. A fixed beta may be forced (an
// invalid one is reported per row).
inline LemmaReport verify_lemmas(int trials, std::uint64_t seed, std::optional<double> forced_beta = std::nullopt) {
  if (trials < 1) fail(ErrorCode::ParamOutOfRange, "trials must be >= 1");
  LemmaReport report;
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 7));
    const int support = 1 + static_cast<int>(uniform_below(rng, 6));
    const double beta = forced_beta ? *forced_beta : 1e-3 + (1.0 - 1e-3) * uniform01(rng);
    const Graph e_a = random_graph(n, 0.1 + 0.5 * uniform01(rng), rng);
    const GraphDistribution d_b = random_distribution(n, support, 0.1 + 0.5 * uniform01(rng), rng);
    LemmaRow row{"weight_bound", "n=" + std::to_string(n) + ";support=" + std::to_string(support) + ";beta=" + csv_number(beta), 0.0, 0.0, ""};
    try {
      const WeightBoundResult r = weight_bound_check(e_a, d_b, beta);
      row.lhs = r.lhs;
      row.rhs = r.rhs;
      row.holds = r.holds ? "true" : "false";
      if (!r.holds) ++report.failures;
    } catch (const Error& e) {
      row.holds = "error:" + std::string(to_string(e.code()));
      ++report.failures;
    }
    report.rows.push_back(std::move(row));

    const SupportFunction w = random_satisfying_support(rng);
    const MiddleRegionResult mr = middle_region_check(w);
    LemmaRow mrow{"middle_region", "support=" + std::to_string(w.points().size()), mr.conclusion_value, 0.0, ""};
    const bool ok = mr.condition_holds && mr.conclusion_value <= 1e-12;
    mrow.holds = ok ? "true" : "false";
    if (!ok) ++report.failures;
    report.rows.push_back(std::move(mrow));
  }
  return report;
}

}  // namespace mvcomm
