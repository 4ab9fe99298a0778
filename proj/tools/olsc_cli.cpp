// Experiment CLI: run the switching-cost expert algorithms, the adaptive
// combiner stack, and the paging pipeline; generate traces and adversarial
// loss sequences; evaluate recorded runs on the dyadic interval grid.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "olsc/experiment.hpp"

namespace {

using namespace olsc;

struct CommonOptions {
  std::string config_path;
  std::map<std::string, CLI::Option*> flags;
};

void add_common(CLI::App* cmd, ExperimentConfig& cfg, CommonOptions& common) {
  common.flags["T"] = cmd->add_option("--T", cfg.T, "horizon (power of two)");
  common.flags["D"] = cmd->add_option("--D", cfg.D, "switching cost");
  common.flags["Z"] = cmd->add_option("--Z", cfg.Z, "gate parameter Z (0 = kind default)");
  common.flags["seed"] = cmd->add_option("--seed", cfg.seed, "rng seed");
  common.flags["workload"] =
      cmd->add_option("--workload", cfg.workload, "workload spec, name:key=val,...");
  common.flags["out-dir"] = cmd->add_option("--out-dir", cfg.out_dir, "output directory");
  cmd->add_option("--config", common.config_path, "flat key=value config file");
}

// Flat key=value config file; '#' starts a comment. Explicit command-line
// flags take precedence over file values.
void apply_config(const CommonOptions& common, ExperimentConfig& cfg) {
  if (common.config_path.empty()) return;
  std::ifstream in(common.config_path);
  if (!in) throw std::invalid_argument("config file not found: " + common.config_path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    const auto it = common.flags.find(key);
    if (it != common.flags.end() && it->second->count() > 0) continue;  // flag wins
    if (key == "T") cfg.T = std::stol(value);
    else if (key == "N") cfg.N = std::stoi(value);
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "k") cfg.k = std::stoi(value);
    else if (key == "D") cfg.D = std::stod(value);
    else if (key == "Z") cfg.Z = std::stod(value);
    else if (key == "tau") cfg.tau = std::stod(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "workload") cfg.workload = value;
    else if (key == "variant" || key == "base") cfg.variant = value;
    else if (key == "out-dir" || key == "out_dir") cfg.out_dir = value;
    else throw std::invalid_argument("config file: unknown key " + key);
  }
}

int run_and_report(const ExperimentConfig& cfg) {
  const ExperimentSummary s = run_experiment(cfg);
  std::cout << "algorithm_loss=" << fmt_double(s.algorithm_loss) << "\n"
            << "comparator_loss=" << fmt_double(s.comparator_loss) << "\n"
            << "intervals=" << s.intervals_evaluated << "\n"
            << "bound_violations=" << s.bound_violations << "\n";
  if (s.base_loss) std::cout << "base_loss=" << fmt_double(*s.base_loss) << "\n";
  if (s.competitive) {
    std::cout << "offline_opt=" << fmt_double(s.competitive->offline_opt) << "\n";
    if (s.competitive->ratio)
      std::cout << "competitive_ratio=" << fmt_double(*s.competitive->ratio) << "\n";
  }
  return s.bound_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongly adaptive online algorithms with switching costs"};
  app.require_subcommand(1);

  ExperimentConfig two;
  two.kind = "two-experts";
  two.N = 2;
  CommonOptions two_common;
  auto* cmd_two = app.add_subcommand("run-two-experts", "drift-gate two-experts run");
  add_common(cmd_two, two, two_common);
  two_common.flags["tau"] = cmd_two->add_option("--tau", two.tau, "interval scale (0 = T)");

  ExperimentConfig adaptive;
  adaptive.kind = "adaptive";
  adaptive.N = 10;
  CommonOptions adaptive_common;
  auto* cmd_adaptive =
      app.add_subcommand("run-adaptive", "combiner stack of fixed-share levels");
  add_common(cmd_adaptive, adaptive, adaptive_common);
  adaptive_common.flags["N"] = cmd_adaptive->add_option("--N", adaptive.N, "number of experts");
  adaptive_common.flags["base"] =
      cmd_adaptive->add_option("--base", adaptive.variant, "optional base, e.g. base:expert=0");

  ExperimentConfig paging;
  paging.kind = "paging";
  paging.workload = "zipf:s=0.8";
  CommonOptions paging_common;
  auto* cmd_paging = app.add_subcommand("run-paging", "paging policies on a request trace");
  add_common(cmd_paging, paging, paging_common);
  paging_common.flags["n"] = cmd_paging->add_option("--n", paging.n, "number of pages");
  paging_common.flags["k"] = cmd_paging->add_option("--k", paging.k, "cache size");
  paging_common.flags["variant"] =
      cmd_paging->add_option("--variant", paging.variant, "mw | marking | combined");
  cmd_paging->add_flag("--offline-opt", paging.offline_opt,
                       "also compute the offline optimum (n<=16, k<=4)");

  // gen-adversary
  long adv_T = 1024;
  double adv_D = 1.0, adv_Z = 0.0, adv_tau = 0.0, adv_M = 0.0;
  std::string adv_kind = "lower";
  std::string adv_out = "adversary.csv";
  auto* cmd_adv = app.add_subcommand("gen-adversary", "emit a lower-bound loss sequence as CSV");
  cmd_adv->add_option("--T", adv_T, "horizon");
  cmd_adv->add_option("--D", adv_D, "switching cost");
  cmd_adv->add_option("--Z", adv_Z, "gate Z of the probed policy (0 = 1/(sqrt(D) T))");
  cmd_adv->add_option("--tau", adv_tau, "gate tau of the probed policy (0 = T)");
  cmd_adv->add_option("--M", adv_M, "regret target (0 = probed policy's bound)");
  cmd_adv->add_option("--kind", adv_kind, "lower | composition");
  cmd_adv->add_option("--out", adv_out, "output CSV path");

  // gate-curve
  double curve_tau = 10000.0, curve_Z = 1e-8;
  long curve_samples = 200;
  std::string curve_out = "gate_curve.csv";
  auto* cmd_curve = app.add_subcommand("gate-curve", "emit (x, g(x)) samples as CSV");
  cmd_curve->add_option("--tau", curve_tau, "tau");
  cmd_curve->add_option("--Z", curve_Z, "Z");
  cmd_curve->add_option("--samples", curve_samples, "sample count");
  cmd_curve->add_option("--out", curve_out, "output CSV path");

  // gen-trace
  int trace_n = 16, trace_cycle = 0;
  long trace_T = 8192, trace_phases = 4;
  double trace_s = 0.8;
  std::uint64_t trace_seed = 1;
  std::string trace_kind = "zipf", trace_out = "trace.txt";
  auto* cmd_trace =
      app.add_subcommand("gen-trace", "write a page request trace, one id per line");
  cmd_trace->add_option("--kind", trace_kind, "zipf | phases | roundrobin");
  cmd_trace->add_option("--n", trace_n, "number of pages");
  cmd_trace->add_option("--T", trace_T, "trace length");
  cmd_trace->add_option("--s", trace_s, "zipf exponent");
  cmd_trace->add_option("--phases", trace_phases, "phase count");
  cmd_trace->add_option("--m", trace_cycle, "round-robin cycle (0 = k+1 convention: n)");
  cmd_trace->add_option("--seed", trace_seed, "rng seed");
  cmd_trace->add_option("--out", trace_out, "output path");

  // evaluate
  std::string eval_losses, eval_weights, eval_out = "intervals.csv";
  double eval_D = 1.0;
  auto* cmd_eval = app.add_subcommand(
      "evaluate", "dyadic-interval regret reports for a recorded two-column run");
  cmd_eval->add_option("--losses", eval_losses, "CSV of per-round losses (t,l0,...,lN-1)")
      ->required();
  cmd_eval->add_option("--weights", eval_weights,
                       "CSV of per-round simplex actions (t,w0,...,wN-1)")
      ->required();
  cmd_eval->add_option("--D", eval_D, "switching cost");
  cmd_eval->add_option("--out", eval_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_two->parsed()) {
      apply_config(two_common, two);
      return run_and_report(two);
    }
    if (cmd_adaptive->parsed()) {
      apply_config(adaptive_common, adaptive);
      return run_and_report(adaptive);
    }
    if (cmd_paging->parsed()) {
      apply_config(paging_common, paging);
      return run_and_report(paging);
    }

    if (cmd_adv->parsed()) {
      const double tau = adv_tau > 0.0 ? adv_tau : static_cast<double>(adv_T);
      const double z = adv_Z > 0.0 ? adv_Z : 1.0 / (std::sqrt(adv_D) * static_cast<double>(adv_T));
      DriftGatePolicy policy(tau, z, adv_D);
      AdversaryRun run;
      if (adv_kind == "lower") {
        const double m = adv_M > 0.0
                             ? adv_M
                             : std::min(std::sqrt(64.0 * adv_D * tau * std::log(1.0 / z)) +
                                            4.0 * std::sqrt(adv_D) + std::sqrt(adv_D) * tau * z,
                                        static_cast<double>(adv_T) / 4.0);
        run = lower_bound_adversary(policy, adv_T, m, adv_D);
      } else if (adv_kind == "composition") {
        run = interval_composition_adversary(policy, adv_T);
      } else {
        throw std::invalid_argument("gen-adversary: kind must be lower | composition");
      }
      CsvWriter csv(adv_out);
      csv.field("t").field("l_0").field("l_1");
      csv.end_row();
      for (std::size_t t = 0; t < run.losses.size(); ++t) {
        csv.field(static_cast<long>(t + 1)).field(run.losses[t][0]).field(run.losses[t][1]);
        csv.end_row();
      }
      std::cout << "forced_loss=" << fmt_double(run.algorithm_loss) << "\n";
      return 0;
    }

    if (cmd_curve->parsed()) {
      const GateFunction gate(curve_tau, curve_Z);
      CsvWriter csv(curve_out);
      csv.field("x").field("g");
      csv.end_row();
      const double lo = -1.2 * gate.threshold();
      const double hi = 1.2 * gate.threshold();
      for (long i = 0; i < curve_samples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(curve_samples - 1);
        csv.field(x).field(gate.clamped(x));
        csv.end_row();
      }
      std::cout << "U=" << fmt_double(gate.threshold()) << "\n";
      return 0;
    }

    if (cmd_trace->parsed()) {
      Rng rng(trace_seed);
      std::vector<int> trace;
      if (trace_kind == "zipf") {
        trace = zipf_trace(trace_n, trace_T, trace_s, rng);
      } else if (trace_kind == "phases") {
        trace = phase_trace(trace_n, trace_T, trace_phases, trace_s, rng);
      } else if (trace_kind == "roundrobin") {
        trace = round_robin_trace(trace_n, trace_T, trace_cycle > 0 ? trace_cycle : trace_n);
      } else {
        throw std::invalid_argument("gen-trace: kind must be zipf | phases | roundrobin");
      }
      std::ofstream out(trace_out, std::ios::binary);
      for (int p : trace) out << p << "\n";
      return 0;
    }

    if (cmd_eval->parsed()) {
      const auto read_matrix = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("evaluate: cannot open " + path);
        std::vector<std::vector<double>> rows;
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          std::vector<double> row;
          std::stringstream ss(line);
          std::string cell;
          bool first = true;
          while (std::getline(ss, cell, ',')) {
            if (first) {
              first = false;
              continue;  // round index
            }
            row.push_back(std::stod(cell));
          }
          rows.push_back(std::move(row));
        }
        return rows;
      };
      const auto loss_rows = read_matrix(eval_losses);
      const auto weight_rows = read_matrix(eval_weights);
      if (loss_rows.size() != weight_rows.size() || loss_rows.empty())
        throw std::invalid_argument("evaluate: length mismatch");
      std::vector<LossVector> losses;
      std::vector<SimplexPoint> actions;
      for (std::size_t t = 0; t < loss_rows.size(); ++t) {
        losses.emplace_back(loss_rows[t]);
        actions.emplace_back(weight_rows[t]);
      }
      const long horizon = static_cast<long>(losses.size());
      if ((horizon & (horizon - 1)) != 0)
        throw std::invalid_argument("evaluate: run length must be a power of two");
      RunTrace trace(std::move(actions), std::move(losses), eval_D);
      CsvWriter csv(eval_out);
      csv.field("start").field("end").field("algorithm_loss").field("comparator");
      csv.field("comparator_loss").field("regret").field("bound").field("bound_satisfied");
      csv.end_row();
      for (const Interval& i : dyadic_intervals(horizon)) {
        const RegretReport r =
            interval_regret(trace, i, ComparatorSpec{ComparatorKind::best_fixed_expert});
        csv.field(r.interval.start).field(r.interval.end).field(r.algorithm_loss);
        csv.field(comparator_name(r.comparator)).field(r.comparator_loss).field(r.regret);
        csv.field(r.bound).field(r.bound_satisfied ? 1L : 0L);
        csv.end_row();
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
