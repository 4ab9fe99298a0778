// Acceptance suite: one test case per criterion, one printed PASS/FAIL line
// each, with every tolerance pinned in code.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "olsc/experiment.hpp"
#include "test_util.hpp"

using namespace olsc;

namespace {

class Criterion {
 public:
  Criterion(int id, std::string label) : id_(id), label_(std::move(label)) {
    start_ = std::chrono::steady_clock::now();
  }

  void expect(bool cond, const char* what) {
    if (!cond) {
      ++failures_;
      std::printf("       criterion %d check failed: %s\n", id_, what);
    }
    CHECK_MESSAGE(cond, what);
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  ~Criterion() {
    std::printf("[%s] criterion %d (%s) in %.1f s\n", failures_ == 0 ? "PASS" : "FAIL", id_,
                label_.c_str(), elapsed());
    std::fflush(stdout);
  }

 private:
  int id_;
  std::string label_;
  long failures_ = 0;
  std::chrono::steady_clock::time_point start_;
};

RunTrace run_gate_policy(const std::vector<LossVector>& losses, double tau, double z, double d) {
  DriftGatePolicy policy(tau, z, d);
  std::vector<SimplexPoint> actions;
  actions.reserve(losses.size());
  for (const auto& l : losses) {
    const double g = policy.weight();
    actions.emplace_back(std::vector<double>{1.0 - g, g});
    policy.observe(l[0], l[1]);
  }
  return RunTrace(std::move(actions), losses, d);
}

void enumerate_subsets(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> pick;
  const std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (int p = from; p <= n; ++p) {
      pick.push_back(p);
      rec(p + 1);
      pick.pop_back();
    }
  };
  rec(1);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("criterion 1: coupling exactness") {
  Criterion crit(1, "coupling exactness");
  Rng rng(101);
  bool marginals_ok = true;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 5);
    const SimplexPoint z = testutil::random_simplex(rng, n);
    const SimplexPoint z2 = testutil::random_simplex(rng, n);
    const CouplingPlan plan = build_coupling(z, z2);
    double trace = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += plan.at(i, j);
        col += plan.at(j, i);
        total += plan.at(i, j);
      }
      trace += plan.at(i, i);
      if (std::abs(row - z[i]) > 1e-9 || std::abs(col - z2[i]) > 1e-9) marginals_ok = false;
    }
    if (std::abs(total - 1.0) > 1e-9) marginals_ok = false;
    if (std::abs((1.0 - trace) - tv_distance(z, z2)) > 1e-9) marginals_ok = false;
  }
  crit.expect(marginals_ok, "marginals / trace identity within 1e-9 on 1000 pairs");

  // Monte-Carlo switch rate vs TV on pinned and random pairs.
  const int trials = 100000;
  std::vector<std::pair<SimplexPoint, SimplexPoint>> pairs;
  pairs.emplace_back(SimplexPoint({0.6, 0.4}), SimplexPoint({0.4, 0.6}));
  Rng setup(7);
  pairs.emplace_back(testutil::random_simplex(setup, 5), testutil::random_simplex(setup, 5));
  pairs.emplace_back(testutil::random_simplex(setup, 6), testutil::random_simplex(setup, 6));
  for (const auto& [za, zb] : pairs) {
    int switches = 0;
    for (int t = 0; t < trials; ++t) {
      const std::size_t start = sample_weighted(za.weights(), 1.0, rng);
      if (transition_sample(start, za, zb, rng) != start) ++switches;
    }
    const double rate = switches / static_cast<double>(trials);
    crit.expect(std::abs(rate - tv_distance(za, zb)) < 0.01,
                "empirical switch rate within 0.01 of TV");
  }
  crit.expect(crit.elapsed() < 10.0, "runtime < 10 s");
}

TEST_CASE("criterion 2: gate function") {
  Criterion crit(2, "gate ODE residual, unit crossing, threshold bound");
  const double h = 1e-4;
  for (double tau : {64.0, 1024.0, 10000.0}) {
    for (double z : {1e-2, 1e-4, 1e-8}) {
      const GateFunction g(tau, z);
      bool residual_ok = true;
      for (int i = 0; i < 100; ++i) {
        const double x = g.threshold() * (i + 0.5) / 100.0;
        const double deriv = (g.raw(x + h) - g.raw(x - h)) / (2.0 * h);
        if (std::abs(8.0 * deriv - (x * g.raw(x) / tau + z)) > 1e-6) residual_ok = false;
      }
      crit.expect(residual_ok, "ODE residual <= 1e-6 on 100 points");
      crit.expect(std::abs(g.raw(g.threshold()) - 1.0) <= 1e-9, "g~(U) = 1 within 1e-9");
      crit.expect(g.threshold() <= std::sqrt(16.0 * tau * std::log(1.0 / z)),
                  "U <= sqrt(16 tau ln(1/Z))");
    }
  }
  crit.expect(crit.elapsed() < 5.0, "runtime < 5 s");
}

TEST_CASE("criterion 3: two-experts guarantees") {
  Criterion crit(3, "two-experts interval regret bounds");
  const long horizon = 4096;
  const double tau = static_cast<double>(horizon);
  long e0_violations = 0;
  long e1_violations = 0;
  for (double d : {1.0, 4.0}) {
    const double z = 1.0 / (std::sqrt(d) * horizon);
    const double log_z = std::log(1.0 / z);
    const double root_d = std::sqrt(d);
    const double bound_e1 = std::sqrt(64.0 * d * tau * log_z) + 4.0 * root_d + root_d * tau * z;
    const auto check_run = [&](const std::vector<LossVector>& losses) {
      const RunTrace trace = run_gate_policy(losses, tau, z, d);
      for (const Interval& i : dyadic_intervals(horizon)) {
        const double bound_e0 = std::min(
            root_d * horizon * z,
            std::sqrt(16.0 * d * tau * log_z) + 2.0 * root_d + root_d * i.length() * z);
        if (trace.algorithm_loss(i) - trace.expert_loss(0, i) > bound_e0) ++e0_violations;
      }
      const Interval whole{1, horizon};
      if (trace.algorithm_loss(whole) - trace.expert_loss(1, whole) > bound_e1) ++e1_violations;
    };
    Rng rng(300 + static_cast<std::uint64_t>(d));
    WorkloadParams params;
    params.num_experts = 2;
    params.horizon = horizon;
    for (int seq = 0; seq < 200; ++seq) check_run(generate_workload(WorkloadKind::iid, params, rng));
    params.block = 64;
    check_run(generate_workload(WorkloadKind::flip_flop, params, rng));
    {
      DriftGatePolicy probe(tau, z, d);
      const double m = std::min(bound_e1, horizon / 4.0);
      const AdversaryRun adv = lower_bound_adversary(probe, horizon, m, d);
      std::vector<LossVector> losses;
      for (const auto& l : adv.losses) losses.emplace_back(std::vector<double>{l[0], l[1]});
      check_run(losses);
    }
  }
  crit.expect(e0_violations == 0, "regret vs expert 0 <= min{sqrt(D) T Z, ...} on every dyadic interval");
  crit.expect(e1_violations == 0, "regret vs expert 1 on [1,tau] <= sqrt(64 D tau ln(1/Z)) + 4 sqrt(D) + sqrt(D) tau Z");
  crit.expect(crit.elapsed() < 120.0, "runtime < 2 min");
}

TEST_CASE("criterion 4: fixed share window bounds") {
  Criterion crit(4, "fixed share windowed regret and slowness");
  const std::size_t n = 10;
  const long tau = 1024;
  const long horizon = 2048;
  long window_violations = 0;
  bool movement_ok = true;
  for (double d : {1.0, 2.0}) {
    const double bound = std::sqrt(16.0 * d * tau * std::log(static_cast<double>(n) * tau));
    Rng rng(400 + static_cast<std::uint64_t>(d));
    WorkloadParams params;
    params.num_experts = n;
    params.horizon = horizon;
    params.segments = 8;
    params.block = 64;
    for (int which = 0; which < 3; ++which) {
      std::vector<LossVector> losses;
      if (which == 0) losses = generate_workload(WorkloadKind::iid, params, rng);
      if (which == 1) losses = generate_workload(WorkloadKind::piecewise_stationary, params, rng);
      if (which == 2) losses = generate_workload(WorkloadKind::flip_flop, params, rng);
      FixedShare fs(n, static_cast<double>(tau), d);
      std::vector<SimplexPoint> actions;
      for (const auto& l : losses) {
        const SimplexPoint before = fs.current_action();
        actions.push_back(before);
        fs.observe(l);
        if (tv_distance(before, fs.current_action()) > fs.eta()) movement_ok = false;
      }
      const RunTrace trace(std::move(actions), std::move(losses), d);
      for (long s = 1; s <= horizon; ++s)
        for (long e = s; e <= std::min(horizon, s + tau - 1); ++e)
          if (trace.algorithm_loss({s, e}) - trace.best_fixed_expert_loss({s, e}) > bound)
            ++window_violations;
    }
  }
  crit.expect(window_violations == 0,
              "regret incl. movement <= sqrt(16 D tau ln(N tau)) on every window of length <= tau");
  crit.expect(movement_ok, "per-step movement <= eta always");
  crit.expect(crit.elapsed() < 60.0, "runtime < 1 min");
}

namespace {

struct StackRun {
  RunTrace trace;
  std::vector<double> ledger;
};

StackRun run_fixed_share_stack(const std::vector<LossVector>& losses, std::size_t n, long horizon,
                               double d, double z,
                               std::shared_ptr<SlowAlgorithm> base = nullptr) {
  std::vector<std::shared_ptr<SlowAlgorithm>> levels;
  for (long tau_u = horizon; tau_u >= 2; tau_u /= 2)
    levels.push_back(std::make_shared<FixedShare>(n, static_cast<double>(tau_u), d));
  CombinerStack stack(std::move(base), std::move(levels), horizon, d, z);
  std::vector<SimplexPoint> actions;
  actions.reserve(losses.size());
  for (const auto& l : losses) actions.push_back(stack.step(l));
  return {RunTrace(std::move(actions), losses, d), stack.slowness_ledger()};
}

}  // namespace

TEST_CASE("criterion 5: strong adaptivity of the stack") {
  Criterion crit(5, "stacked fixed share: dyadic regret and block tracking");
  const std::size_t n = 10;
  const long horizon = 4096;
  const double d = 1.0;
  const double z = 1.0 / (2.0 * horizon * std::log2(static_cast<double>(horizon)));
  const double log_nt = std::log(static_cast<double>(n) * horizon);
  long dyadic_violations = 0;
  Rng rng(500);
  WorkloadParams params;
  params.num_experts = n;
  params.horizon = horizon;
  for (long segments : {4L, 16L}) {
    params.segments = segments;
    const auto losses = generate_workload(WorkloadKind::piecewise_stationary, params, rng);
    const StackRun run = run_fixed_share_stack(losses, n, horizon, d, z);
    for (const Interval& i : dyadic_intervals(horizon)) {
      const double bound = 30.0 * std::sqrt(d * i.length() * log_nt);
      if (run.trace.algorithm_loss(i) - run.trace.best_fixed_expert_loss(i) > bound)
        ++dyadic_violations;
    }
  }
  crit.expect(dyadic_violations == 0,
              "piecewise workloads: every dyadic interval regret <= 30 sqrt(D |I| ln(N T))");

  // Same checks through the experiment driver.
  {
    ExperimentConfig cfg;
    cfg.kind = "adaptive";
    cfg.T = horizon;
    cfg.N = static_cast<int>(n);
    cfg.workload = "piecewise:segments=16";
    cfg.seed = 501;
    cfg.out_dir = "acceptance_out/criterion5";
    const ExperimentSummary summary = run_experiment(cfg);
    crit.expect(summary.bound_violations == 0, "run_experiment reports zero bound violations");
    std::filesystem::remove_all("acceptance_out");
  }

  // flip_flop with block round(T^{1/10}); tracked = per-block regret within
  // the strongly adaptive bound.
  const long block = std::lround(std::pow(static_cast<double>(horizon), 0.1));
  params.block = block;
  const auto losses = generate_workload(WorkloadKind::flip_flop, params, rng);
  const StackRun run = run_fixed_share_stack(losses, n, horizon, d, z);
  long tracked = 0;
  long blocks = 0;
  for (long s = 1; s + block - 1 <= horizon; s += block) {
    const Interval i{s, s + block - 1};
    ++blocks;
    const double bound = 30.0 * std::sqrt(d * i.length() * log_nt);
    if (run.trace.algorithm_loss(i) - run.trace.best_fixed_expert_loss(i) <= bound) ++tracked;
  }
  crit.expect(tracked >= static_cast<long>(0.9 * static_cast<double>(blocks)),
              "flip_flop: block-optimal expert tracked in >= 90% of blocks");
  for (const Interval& i : dyadic_intervals(horizon)) {
    const double bound = 30.0 * std::sqrt(d * i.length() * log_nt);
    if (run.trace.algorithm_loss(i) - run.trace.best_fixed_expert_loss(i) > bound)
      ++dyadic_violations;
  }
  crit.expect(dyadic_violations == 0, "flip_flop: dyadic interval bound holds");
  crit.expect(crit.elapsed() < 300.0, "runtime < 5 min");
}

TEST_CASE("criterion 6: base preservation") {
  Criterion crit(6, "stack loss <= base loss + sqrt(D) over [1,T]");
  const std::size_t n = 5;
  const long horizon = 4096;
  const double d = 1.0;
  const double z = 1.0 / (2.0 * horizon * std::log2(static_cast<double>(horizon)));
  long violations = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(600 + seed);
    std::vector<LossVector> losses;
    losses.reserve(static_cast<std::size_t>(horizon));
    for (long t = 0; t < horizon; ++t) {
      std::vector<double> l(n);
      for (std::size_t i = 0; i < n; ++i)
        l[i] = uniform01(rng) < (i == 0 ? 0.2 : 0.6) ? 1.0 : 0.0;
      losses.emplace_back(std::move(l));
    }
    auto base = std::make_shared<ConstantPolicy>(SimplexPoint::point_mass(n, 0));
    const StackRun run = run_fixed_share_stack(losses, n, horizon, d, z, base);
    const Interval whole{1, horizon};
    const double base_loss = run.trace.expert_loss(0, whole);
    if (run.trace.algorithm_loss(whole) > base_loss + std::sqrt(d)) ++violations;
  }
  crit.expect(violations == 0, "zero violations across 50 seeds");
  crit.expect(crit.elapsed() < 120.0, "runtime < 2 min");
}

TEST_CASE("criterion 7: partition function, sampling, min-switch oracles") {
  Criterion crit(7, "Psi DP / exact sampling / minimal-switch transition");
  Rng rng(700);
  // DP vs enumeration across n <= 12, k <= 6.
  bool dp_ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 9));   // 4..12
    const int k = 1 + static_cast<int>(uniform_index(rng, 6));   // 1..6
    if (k > n) continue;
    std::vector<double> la(static_cast<std::size_t>(n));
    for (double& v : la) v = -5.0 + 10.0 * uniform01(rng);
    ProductWeights w(la, std::min(k, n));
    std::vector<std::vector<int>> subsets;
    enumerate_subsets(n, std::min(k, n), subsets);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    for (const auto& s : subsets) {
      double lp = 0.0;
      for (int p : s) lp += la[static_cast<std::size_t>(p - 1)];
      terms.push_back(lp);
      best = std::max(best, lp);
    }
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - best);
    const double brute = best + std::log(acc);
    const double got = w.log_psi(n, std::min(k, n));
    if (std::abs(got - brute) > 1e-9 * std::max(1.0, std::abs(brute))) dp_ok = false;
  }
  crit.expect(dp_ok, "log Psi matches enumeration to 1e-9 relative (n <= 12, k <= 6)");

  // Exact sampling frequencies, n=6 k=3.
  {
    std::vector<double> la;
    for (int p = 1; p <= 6; ++p) la.push_back(std::log(static_cast<double>(p)));
    ProductWeights w(la, 3);
    std::map<std::vector<int>, long> counts;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) ++counts[w.sample(rng).pages];
    std::vector<std::vector<int>> subsets;
    enumerate_subsets(6, 3, subsets);
    bool freq_ok = true;
    for (const auto& s : subsets) {
      const double expect = w.subset_prob(make_cache(std::vector<int>(s)));
      if (std::abs(counts[s] / static_cast<double>(trials) - expect) >= 0.01) freq_ok = false;
    }
    crit.expect(freq_ok, "sampling frequencies within 0.01 of subset_prob");
  }

  // Minimal-switch transition empirical switch rate vs enumerated TV.
  {
    std::vector<double> la = {0.3, -0.2, 0.1, 0.5, -0.4, 0.0};
    ProductWeights w(la, 3);
    ProductWeights boosted = w;
    boosted.boost(4, 0.7);
    std::vector<std::vector<int>> subsets;
    enumerate_subsets(6, 3, subsets);
    double tv = 0.0;
    for (const auto& s : subsets) {
      const CacheConfig c = make_cache(std::vector<int>(s));
      tv += std::max(boosted.subset_prob(c) - w.subset_prob(c), 0.0);
    }
    const int trials = 100000;
    int switched = 0;
    for (int t = 0; t < trials; ++t) {
      const CacheConfig a = w.sample(rng);
      if (!(min_switch_transition(a, w, boosted, rng) == a)) ++switched;
    }
    crit.expect(std::abs(switched / static_cast<double>(trials) - tv) < 0.01,
                "min-switch empirical switch rate within 0.01 of enumerated TV");
  }
  crit.expect(crit.elapsed() < 180.0, "runtime < 3 min");
}

TEST_CASE("criterion 8: paging end to end") {
  Criterion crit(8, "paging MW regret, combined pipeline, per-round runtime");
  const int n = 16, k = 3;
  const long horizon = 8192;
  const double d = k / 2.0;

  // (a) fractional paging-MW regret vs the best fixed cache on an iid Zipf trace.
  {
    Rng rng(800);
    const auto requests = zipf_trace(n, horizon, 0.8, rng);
    PagingMW mw(n, k, horizon, rng);
    double frac_loss = 0.0;
    double pending = 0.0;
    for (std::size_t t = 0; t < requests.size(); ++t) {
      mw.serve(requests[t], rng);
      frac_loss += pending + mw.last_fractional_miss();
      pending = d * mw.last_fractional_tv();
    }
    const double comparator = best_fixed_cache_loss(requests, {1, horizon}, n, k);
    const double bound = std::sqrt(8.0 * d * horizon * PagingMW::log_binom(n, k));
    crit.expect(frac_loss <= comparator + bound,
                "fractional MW loss <= best fixed cache + sqrt(8 (k/2) T ln C(n,k))");
  }

  // (b) combined competitive+adaptive policy.
  const double z = 1.0 / (2.0 * horizon * std::log2(static_cast<double>(horizon)));
  {
    Rng rng(801);
    std::vector<int> requests;
    requests.reserve(static_cast<std::size_t>(horizon));
    for (long t = 0; t < horizon; ++t)
      requests.push_back(1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(k))));
    CompetitiveAdaptivePaging policy(n, k, horizon, z, 802);
    for (int p : requests) policy.serve(p);
    crit.expect(policy.combined_loss() <= policy.base_loss() + k,
                "fixed page set: combined loss <= marking loss + k");
  }
  {
    Rng rng(803);
    const auto requests = phase_trace(n, horizon, 4, 1.2, rng);
    CompetitiveAdaptivePaging policy(n, k, horizon, z, 804);
    PagingRun run;
    run.requests = requests;
    run.miss.resize(requests.size());
    run.movement_in.resize(requests.size());
    for (std::size_t t = 0; t < requests.size(); ++t) {
      const auto out = policy.serve(requests[t]);
      run.miss[t] = out.miss ? 1.0 : 0.0;
      run.movement_in[t] = out.movement_in;
    }
    crit.expect(policy.combined_loss() <= policy.base_loss() + k,
                "4-phase workload: combined loss <= marking loss + k");
    const long phase_len = horizon / 4;
    bool phases_ok = true;
    for (long ph = 0; ph < 4; ++ph) {
      const Interval i{ph * phase_len + 1, (ph + 1) * phase_len};
      const double regret =
          run.loss(i) - best_fixed_cache_loss(requests, i, n, k);
      const double bound =
          30.0 * k * std::sqrt(static_cast<double>(i.length()) *
                               std::log(static_cast<double>(n) * horizon));
      if (regret > bound) phases_ok = false;
    }
    crit.expect(phases_ok, "per-phase regret <= 30 k sqrt(|I| ln(n T))");
  }

  // (c) per-round runtime at n=1000, k=50.
  {
    Rng rng(805);
    PagingMW big(1000, 50, 8192, rng);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const int page = 1 + static_cast<int>(uniform_index(rng, 1000));
      const auto t0 = std::chrono::steady_clock::now();
      big.serve(page, rng);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      worst = std::max(worst, ms);
    }
    std::printf("       criterion 8c: worst per-round runtime %.2f ms (n=1000, k=50)\n", worst);
    crit.expect(worst <= 50.0, "per-round runtime <= 50 ms at n=1000, k=50");
  }
  crit.expect(crit.elapsed() < 600.0, "runtime < 10 min");
}

TEST_CASE("criterion 9: lower-bound machinery") {
  Criterion crit(9, "constructive adversary forces T/2 + M 2^{-4M}");
  const long horizon = 4096;
  const double d = 1.0;
  const double z = 1.0 / horizon;
  const double tau = static_cast<double>(horizon);
  DriftGatePolicy gate(tau, z, d);
  const double m =
      std::sqrt(64.0 * d * tau * std::log(1.0 / z)) + 4.0 * std::sqrt(d) + std::sqrt(d) * tau * z;
  const double a = m * std::pow(2.0, -4.0 * m);  // underflows to 0 for this M
  const AdversaryRun run = lower_bound_adversary(gate, horizon, std::min(m, horizon / 4.0), d);
  crit.expect(run.algorithm_loss >= horizon / 2.0 + a, "forced fractional loss >= T/2 + M 2^{-4M}");
  for (const auto& l : run.losses)
    if (!((l[0] == 0.0 && l[1] == 1.0) || (l[0] == 1.0 && l[1] == 0.0) ||
          (l[0] == 0.5 && l[1] == 0.5))) {
      crit.expect(false, "loss outside the 3-element set");
      break;
    }
  crit.expect(crit.elapsed() < 60.0, "runtime < 1 min");
}

TEST_CASE("criterion 10: determinism of the experiment suites") {
  Criterion crit(10, "byte-identical CSV artifacts under identical seeds");
  const std::string root = "acceptance_out";
  std::filesystem::remove_all(root);
  const auto run_twice = [&](ExperimentConfig cfg, const std::string& name) {
    cfg.out_dir = root + "/" + name + "_a";
    run_experiment(cfg);
    cfg.out_dir = root + "/" + name + "_b";
    run_experiment(cfg);
    for (const char* file : {"/rounds.csv", "/intervals.csv"}) {
      const std::string a = slurp(root + "/" + name + "_a" + file);
      const std::string b = slurp(root + "/" + name + "_b" + file);
      crit.expect(!a.empty() && a == b, "byte-identical rerun");
    }
  };
  ExperimentConfig two;
  two.kind = "two-experts";
  two.N = 2;
  two.T = 4096;
  two.workload = "iid";
  two.seed = 42;
  run_twice(two, "two_experts");
  ExperimentConfig adaptive;
  adaptive.kind = "adaptive";
  adaptive.N = 10;
  adaptive.T = 1024;
  adaptive.workload = "piecewise:segments=4";
  adaptive.seed = 43;
  run_twice(adaptive, "adaptive");
  ExperimentConfig mw;
  mw.kind = "paging";
  mw.variant = "mw";
  mw.n = 16;
  mw.k = 3;
  mw.D = 1.5;
  mw.T = 1024;
  mw.workload = "zipf:s=0.8";
  mw.seed = 44;
  run_twice(mw, "paging_mw");
  ExperimentConfig combined;
  combined.kind = "paging";
  combined.variant = "combined";
  combined.n = 16;
  combined.k = 3;
  combined.D = 1.5;
  combined.T = 1024;
  combined.workload = "phases:count=4";
  combined.seed = 45;
  run_twice(combined, "paging_combined");
  std::filesystem::remove_all(root);
}
