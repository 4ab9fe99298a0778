#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "olsc/harness.hpp"

namespace olsc {

struct ExperimentConfig {
  std::string kind = "two-experts";  // two-experts | adaptive | paging
  long T = 1024;
  int N = 2;   // experts
  int n = 16;  // pages
  int k = 3;   // cache size
  double D = 1.0;
  double Z = 0.0;    // 0 -> per-kind default
  double tau = 0.0;  // 0 -> T
  std::uint64_t seed = 1;
  std::string workload = "iid";
  std::string variant;  // paging: mw | marking | combined; adaptive: "base=constant:<i>"
  std::string out_dir = "out";
  bool offline_opt = false;
};

namespace detail {

struct WorkloadSpec {
  std::string name;
  std::map<std::string, std::string> params;

  double get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stod(it->second);
  }
  long get(const std::string& key, long fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stol(it->second);
  }
  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

inline WorkloadSpec parse_workload(const std::string& text) {
  WorkloadSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("workload: expected key=value in '" + item + "'");
    spec.params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return spec;
}

}  // namespace detail

// Per-kind default Z: 1/(sqrt(D) T) for the two-experts policy, the combiner
// default 1/(2 T log2 T) elsewhere.
inline double default_z(const std::string& kind, long horizon, double switching_cost) {
  if (kind == "two-experts") return 1.0 / (std::sqrt(switching_cost) * static_cast<double>(horizon));
  return 1.0 / (2.0 * static_cast<double>(horizon) * std::log2(static_cast<double>(horizon)));
}

inline std::vector<LossVector> expert_losses_for(const ExperimentConfig& cfg, Rng& rng) {
  const auto spec = detail::parse_workload(cfg.workload);
  WorkloadParams p;
  p.num_experts = static_cast<std::size_t>(cfg.N);
  p.horizon = cfg.T;
  if (spec.name == "iid") {
    p.bernoulli = {spec.get("p", 0.5)};
    return generate_workload(WorkloadKind::iid, p, rng);
  }
  if (spec.name == "piecewise") {
    p.segments = spec.get("segments", 4L);
    p.p_low = spec.get("p_low", 0.1);
    p.p_high = spec.get("p_high", 0.6);
    return generate_workload(WorkloadKind::piecewise_stationary, p, rng);
  }
  if (spec.name == "flip_flop") {
    p.block = spec.get("block", 10L);
    return generate_workload(WorkloadKind::flip_flop, p, rng);
  }
  if (spec.name == "adversary") {
    if (cfg.N != 2) throw std::invalid_argument("adversary workload needs N=2");
    const double tau = cfg.tau > 0.0 ? cfg.tau : static_cast<double>(cfg.T);
    const double z = cfg.Z > 0.0 ? cfg.Z : default_z("two-experts", cfg.T, cfg.D);
    DriftGatePolicy probe(tau, z, cfg.D);
    const std::string which = spec.get("kind", std::string("lower"));
    AdversaryRun run;
    if (which == "lower") {
      const double m_default =
          std::min(std::sqrt(64.0 * cfg.D * tau * std::log(1.0 / z)) + 4.0 * std::sqrt(cfg.D) +
                       std::sqrt(cfg.D) * tau * z,
                   static_cast<double>(cfg.T) / 4.0);
      run = lower_bound_adversary(probe, cfg.T, spec.get("M", m_default), cfg.D);
    } else if (which == "composition") {
      run = interval_composition_adversary(probe, cfg.T);
    } else {
      throw std::invalid_argument("adversary workload: unknown kind " + which);
    }
    std::vector<LossVector> out;
    out.reserve(run.losses.size());
    for (const auto& l : run.losses) out.emplace_back(std::vector<double>{l[0], l[1]});
    return out;
  }
  throw std::invalid_argument("unknown expert workload: " + spec.name);
}

inline std::vector<int> paging_trace_for(const ExperimentConfig& cfg, Rng& rng) {
  const auto spec = detail::parse_workload(cfg.workload);
  if (spec.name == "zipf") return zipf_trace(cfg.n, cfg.T, spec.get("s", 0.8), rng);
  if (spec.name == "phases")
    return phase_trace(cfg.n, cfg.T, spec.get("count", 4L), spec.get("s", 0.8), rng);
  if (spec.name == "roundrobin")
    return round_robin_trace(cfg.n, cfg.T, static_cast<int>(spec.get("m", static_cast<long>(cfg.k + 1))));
  if (spec.name == "fixedset") {
    const int m = static_cast<int>(spec.get("m", static_cast<long>(cfg.k)));
    if (m < 1 || m > cfg.n) throw std::invalid_argument("fixedset: bad m");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(cfg.T));
    for (long t = 0; t < cfg.T; ++t)
      out.push_back(static_cast<int>(uniform_index(rng, static_cast<std::size_t>(m))) + 1);
    return out;
  }
  if (spec.name == "file") {
    std::ifstream in(spec.get("path", std::string()));
    if (!in) throw std::invalid_argument("paging trace file not found");
    std::vector<int> out;
    int page;
    while (in >> page) out.push_back(page);
    if (static_cast<long>(out.size()) < cfg.T)
      throw std::invalid_argument("paging trace shorter than T");
    out.resize(static_cast<std::size_t>(cfg.T));
    return out;
  }
  throw std::invalid_argument("unknown paging workload: " + spec.name);
}

struct ExperimentSummary {
  double algorithm_loss = 0.0;
  double comparator_loss = 0.0;
  long intervals_evaluated = 0;
  long bound_violations = 0;
  std::optional<double> base_loss;
  std::optional<CompetitiveReport> competitive;
};

namespace detail {

inline void write_expert_rounds_csv(const std::string& path, const RunTrace& trace) {
  CsvWriter csv(path);
  csv.field("t").field("loss").field("movement_in").field("cumulative_loss");
  csv.end_row();
  double cum = 0.0;
  for (long t = 1; t <= trace.horizon(); ++t) {
    const double service = trace.service_loss({t, t});
    const double move = t > 1 ? trace.movement({t - 1, t}) : 0.0;
    cum += service + move;
    csv.field(t).field(service).field(move).field(cum);
    csv.end_row();
  }
}

inline void write_interval_csv_header(CsvWriter& csv) {
  csv.field("start").field("end").field("algorithm_loss").field("comparator");
  csv.field("comparator_loss").field("regret").field("bound").field("bound_satisfied");
  csv.end_row();
}

inline void write_report_row(CsvWriter& csv, const RegretReport& r) {
  csv.field(r.interval.start).field(r.interval.end).field(r.algorithm_loss);
  csv.field(comparator_name(r.comparator)).field(r.comparator_loss).field(r.regret);
  csv.field(r.bound).field(r.bound_satisfied ? 1L : 0L);
  csv.end_row();
}

}  // namespace detail

// Deterministic experiment driver: given a config, runs the named pipeline,
// writes rounds.csv / intervals.csv / summary.txt under out_dir and returns
// the summary. Identical configs produce byte-identical artifacts.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  if (cfg.T < 1 || (cfg.T & (cfg.T - 1)) != 0)
    throw std::invalid_argument("run_experiment: T must be a power of two");
  const double z = cfg.Z > 0.0 ? cfg.Z : default_z(cfg.kind, cfg.T, cfg.D);
  if (!(z > 0.0 && z <= 1.0 / M_E))
    throw std::invalid_argument("run_experiment: Z must lie in (0, 1/e]");
  std::filesystem::create_directories(cfg.out_dir);
  const std::string rounds_path = cfg.out_dir + "/rounds.csv";
  const std::string intervals_path = cfg.out_dir + "/intervals.csv";
  const std::string summary_path = cfg.out_dir + "/summary.txt";
  Rng rng(cfg.seed);
  ExperimentSummary summary;

  if (cfg.kind == "two-experts") {
    const double tau = cfg.tau > 0.0 ? cfg.tau : static_cast<double>(cfg.T);
    auto losses = expert_losses_for(cfg, rng);
    DriftGatePolicy policy(tau, z, cfg.D);
    std::vector<SimplexPoint> actions;
    actions.reserve(losses.size());
    for (const auto& l : losses) {
      const double g = policy.weight();
      actions.emplace_back(std::vector<double>{1.0 - g, g});
      policy.observe(l[0], l[1]);
    }
    RunTrace trace(std::move(actions), std::move(losses), cfg.D);
    detail::write_expert_rounds_csv(rounds_path, trace);
    CsvWriter csv(intervals_path);
    detail::write_interval_csv_header(csv);
    const double root_d = std::sqrt(cfg.D);
    const double log_z = std::log(1.0 / z);
    const double bound_e1 =
        std::sqrt(64.0 * cfg.D * tau * log_z) + 4.0 * root_d + root_d * tau * z;
    for (const Interval& i : dyadic_intervals(cfg.T)) {
      const double bound_e0 =
          std::min(root_d * static_cast<double>(cfg.T) * z,
                   std::sqrt(16.0 * cfg.D * tau * log_z) + 2.0 * root_d +
                       root_d * static_cast<double>(i.length()) * z);
      RegretReport r0 = interval_regret(
          trace, i, ComparatorSpec{ComparatorKind::fixed_expert, 0}, bound_e0);
      detail::write_report_row(csv, r0);
      ++summary.intervals_evaluated;
      if (!r0.bound_satisfied) ++summary.bound_violations;
      if (i.length() <= static_cast<long>(tau)) {
        RegretReport r1 = interval_regret(
            trace, i, ComparatorSpec{ComparatorKind::fixed_expert, 1}, bound_e1);
        detail::write_report_row(csv, r1);
        ++summary.intervals_evaluated;
        if (!r1.bound_satisfied) ++summary.bound_violations;
      }
    }
    summary.algorithm_loss = trace.algorithm_loss({1, trace.horizon()});
    summary.comparator_loss = trace.best_fixed_expert_loss({1, trace.horizon()});
  } else if (cfg.kind == "adaptive") {
    auto losses = expert_losses_for(cfg, rng);
    std::shared_ptr<SlowAlgorithm> base;
    const auto variant = detail::parse_workload(cfg.variant.empty() ? "none" : cfg.variant);
    if (variant.name == "base") {
      const auto expert = static_cast<std::size_t>(variant.get("expert", 0L));
      base = std::make_shared<ConstantPolicy>(
          SimplexPoint::point_mass(static_cast<std::size_t>(cfg.N), expert));
    }
    std::vector<std::shared_ptr<SlowAlgorithm>> levels;
    for (long tau_u = cfg.T; tau_u >= 2; tau_u /= 2)
      levels.push_back(std::make_shared<FixedShare>(static_cast<std::size_t>(cfg.N),
                                                    static_cast<double>(tau_u), cfg.D));
    CombinerStack stack(base, std::move(levels), cfg.T, cfg.D, z);
    std::vector<SimplexPoint> actions;
    actions.reserve(losses.size());
    for (const auto& l : losses) actions.push_back(stack.step(l));
    RunTrace trace(std::move(actions), std::move(losses), cfg.D);
    detail::write_expert_rounds_csv(rounds_path, trace);
    CsvWriter csv(intervals_path);
    detail::write_interval_csv_header(csv);
    const double log_nt =
        std::log(static_cast<double>(cfg.N) * static_cast<double>(cfg.T));
    for (const Interval& i : dyadic_intervals(cfg.T)) {
      const double bound = 30.0 * std::sqrt(cfg.D * static_cast<double>(i.length()) * log_nt);
      RegretReport r =
          interval_regret(trace, i, ComparatorSpec{ComparatorKind::best_fixed_expert}, bound);
      detail::write_report_row(csv, r);
      ++summary.intervals_evaluated;
      if (!r.bound_satisfied) ++summary.bound_violations;
    }
    summary.algorithm_loss = trace.algorithm_loss({1, trace.horizon()});
    summary.comparator_loss = trace.best_fixed_expert_loss({1, trace.horizon()});
  } else if (cfg.kind == "paging") {
    const auto requests = paging_trace_for(cfg, rng);
    const std::string variant = cfg.variant.empty() ? "mw" : cfg.variant;
    PagingRun run;
    run.requests = requests;
    run.miss.resize(requests.size());
    run.movement_in.assign(requests.size(), 0.0);
    if (variant == "mw" || variant == "marking") {
      std::unique_ptr<PagingPolicy> policy;
      PagingMW* mw = nullptr;
      if (variant == "mw") {
        auto p = std::make_unique<PagingMW>(cfg.n, cfg.k, cfg.T, rng);
        mw = p.get();
        policy = std::move(p);
        run.frac_miss.resize(requests.size());
        run.frac_movement_in.assign(requests.size(), 0.0);
      } else {
        policy = std::make_unique<Marking>(cfg.n, cfg.k);
      }
      CacheConfig prev = policy->cache();
      for (std::size_t t = 0; t < requests.size(); ++t) {
        const CacheConfig& cache = policy->cache();
        if (t > 0) run.movement_in[t] = movement_cost(prev, cache);
        run.miss[t] = paging_loss(cache, requests[t]);
        prev = cache;
        policy->serve(requests[t], rng);
        if (mw) {
          run.frac_miss[t] = mw->last_fractional_miss();
          if (t + 1 < requests.size())
            run.frac_movement_in[t + 1] = (cfg.k / 2.0) * mw->last_fractional_tv();
        }
      }
    } else if (variant == "combined") {
      CompetitiveAdaptivePaging policy(cfg.n, cfg.k, cfg.T, z, cfg.seed);
      for (std::size_t t = 0; t < requests.size(); ++t) {
        const auto out = policy.serve(requests[t]);
        run.miss[t] = out.miss ? 1.0 : 0.0;
        run.movement_in[t] = out.movement_in;
      }
      summary.base_loss = policy.base_loss();
    } else {
      throw std::invalid_argument("paging variant must be mw | marking | combined");
    }
    // Per-round CSV with the cumulative loss of the horizon-best fixed cache.
    std::vector<long> counts(static_cast<std::size_t>(cfg.n) + 1, 0);
    for (int p : requests) ++counts[static_cast<std::size_t>(p)];
    std::vector<int> order(static_cast<std::size_t>(cfg.n));
    for (int p = 1; p <= cfg.n; ++p) order[static_cast<std::size_t>(p - 1)] = p;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)]; });
    CacheConfig best_cache = make_cache(
        std::vector<int>(order.begin(), order.begin() + cfg.k));
    CsvWriter rounds(rounds_path);
    rounds.field("t").field("miss").field("movement_cost").field("cumulative_loss");
    rounds.field("comparator_loss");
    rounds.end_row();
    double cum = 0.0;
    double cum_cmp = 0.0;
    for (std::size_t t = 0; t < requests.size(); ++t) {
      cum += run.miss[t] + run.movement_in[t];
      cum_cmp += paging_loss(best_cache, requests[t]);
      rounds.field(static_cast<long>(t + 1)).field(run.miss[t]).field(run.movement_in[t]);
      rounds.field(cum).field(cum_cmp);
      rounds.end_row();
    }
    CsvWriter csv(intervals_path);
    detail::write_interval_csv_header(csv);
    if (variant != "marking") {
      const double log_nt =
          std::log(static_cast<double>(cfg.n) * static_cast<double>(cfg.T));
      for (const Interval& i : dyadic_intervals(cfg.T)) {
        RegretReport r;
        r.interval = i;
        r.comparator = ComparatorKind::best_fixed_cache;
        r.algorithm_loss = run.loss(i);
        r.comparator_loss = best_fixed_cache_loss(run.requests, i, cfg.n, cfg.k);
        r.regret = r.algorithm_loss - r.comparator_loss;
        r.bound = 30.0 * cfg.k * std::sqrt(static_cast<double>(i.length()) * log_nt);
        r.bound_satisfied = r.regret <= r.bound;
        detail::write_report_row(csv, r);
        ++summary.intervals_evaluated;
        if (!r.bound_satisfied) ++summary.bound_violations;
      }
    }
    summary.algorithm_loss = run.loss({1, run.horizon()});
    summary.comparator_loss = best_fixed_cache_loss(run.requests, {1, run.horizon()}, cfg.n, cfg.k);
    if (cfg.offline_opt) {
      // Whole fault counts: the algorithm's misses against the offline fault
      // count (twice the halved offline cost).
      double misses = 0.0;
      for (double m : run.miss) misses += m;
      const double opt_faults = 2.0 * offline_paging_opt(run.requests, cfg.n, cfg.k);
      summary.competitive = competitive_ratio(misses, opt_faults);
    }
  } else {
    throw std::invalid_argument("run_experiment: unknown kind " + cfg.kind);
  }

  std::ofstream out(summary_path, std::ios::binary);
  out << "kind=" << cfg.kind << "\n";
  out << "T=" << cfg.T << "\n";
  out << "seed=" << cfg.seed << "\n";
  out << "workload=" << cfg.workload << "\n";
  out << "algorithm_loss=" << fmt_double(summary.algorithm_loss) << "\n";
  out << "comparator_loss=" << fmt_double(summary.comparator_loss) << "\n";
  out << "intervals=" << summary.intervals_evaluated << "\n";
  out << "bound_violations=" << summary.bound_violations << "\n";
  if (summary.base_loss) out << "base_loss=" << fmt_double(*summary.base_loss) << "\n";
  if (summary.competitive) {
    out << "offline_opt=" << fmt_double(summary.competitive->offline_opt) << "\n";
    if (summary.competitive->ratio)
      out << "competitive_ratio=" << fmt_double(*summary.competitive->ratio) << "\n";
  }
  return summary;
}

}  // namespace olsc
