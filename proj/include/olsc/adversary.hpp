#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "olsc/drift_gate.hpp"
#include "olsc/rng.hpp"
#include "olsc/simplex.hpp"

namespace olsc {

// Deterministic fractional policy over two experts, queried by the adaptive
// adversaries below. weight() is the probability placed on expert 1 for the
// upcoming round.
class TwoExpertPolicy {
 public:
  virtual ~TwoExpertPolicy() = default;
  virtual double weight() const = 0;
  virtual void observe(double l0, double l1) = 0;
};

class DriftGatePolicy : public TwoExpertPolicy {
 public:
  DriftGatePolicy(double tau, double z_param, double switching_cost)
      : gate_(tau, z_param, switching_cost) {}
  double weight() const override { return gate_.weight(); }
  void observe(double l0, double l1) override { gate_.step(l0, l1); }
  const DriftGate& gate() const { return gate_; }

 private:
  DriftGate gate_;
};

// Whole-game gain bookkeeping: G_t = t/2 - L_t with the z_0 := 0 convention,
// so the first round is charged D |z_1 - 0| of movement.
class GainTracker {
 public:
  explicit GainTracker(double switching_cost) : d_(switching_cost) {}

  void record(double z, double l0, double l1) {
    loss_ += l0 * (1.0 - z) + l1 * z + d_ * std::abs(z - prev_z_);
    prev_z_ = z;
    ++rounds_;
  }

  double loss() const { return loss_; }
  double gain() const { return static_cast<double>(rounds_) / 2.0 - loss_; }
  long rounds() const { return rounds_; }

 private:
  double d_;
  double loss_ = 0.0;
  double prev_z_ = 0.0;
  long rounds_ = 0;
};

struct AdversaryRun {
  std::vector<std::array<double, 2>> losses;
  double algorithm_loss = 0.0;  // fractional, movement included (z_0 := 0)
  struct BlockStat {
    double loss = 0.0;
    bool punished = false;
  };
  std::vector<BlockStat> blocks;  // interval composition only
};

// Constructive adversary of the two-expert lower bound. While the policy's
// upcoming weight stays at most 1/2 + G_t + a (a = M 2^{-4M}), the favored
// expert keeps losing; the first time the weight crosses, the adversary
// punishes it once and then freezes on (1/2, 1/2). The roles are mirrored
// when the policy opens above weight 1/2.
inline AdversaryRun lower_bound_adversary(TwoExpertPolicy& policy, long horizon,
                                          double regret_bound, double switching_cost = 1.0) {
  if (horizon < 4.0 * regret_bound)
    throw std::invalid_argument("lower_bound_adversary: need T >= 4M");
  const double a = regret_bound * std::pow(2.0, -4.0 * regret_bound);
  const bool mirrored = policy.weight() > 0.5;
  enum class Phase { probe, punish, freeze };
  Phase phase = Phase::probe;
  GainTracker tracker(switching_cost);
  AdversaryRun run;
  run.losses.reserve(static_cast<std::size_t>(horizon));
  for (long t = 1; t <= horizon; ++t) {
    std::array<double, 2> loss{};
    switch (phase) {
      case Phase::probe:
        loss = mirrored ? std::array<double, 2>{0.0, 1.0} : std::array<double, 2>{1.0, 0.0};
        break;
      case Phase::punish:
        loss = mirrored ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
        phase = Phase::freeze;
        break;
      case Phase::freeze:
        loss = {0.5, 0.5};
        break;
    }
    const double z = policy.weight();
    tracker.record(z, loss[0], loss[1]);
    policy.observe(loss[0], loss[1]);
    run.losses.push_back(loss);
    if (phase == Phase::probe) {
      // Punishing pays only on a strictly positive weight; the threshold is
      // clamped at zero so a policy glued to the favored expert is probed
      // forever (and loses every round) instead of being punished for free.
      const double z_next = policy.weight();
      const double threshold = std::max(0.5 + tracker.gain() + a, 0.0);
      const bool crossed = mirrored ? (1.0 - z_next) > threshold : z_next > threshold;
      if (crossed) phase = Phase::punish;
    }
  }
  run.algorithm_loss = tracker.loss();
  return run;
}

// Interval composition of the lower-bound adversary: blocks of length
// floor(log2 T) with per-block target M = log2(T)/100, gain reset per block,
// remainder rounds padded with the regret-neutral (1/2, 1/2).
inline AdversaryRun interval_composition_adversary(TwoExpertPolicy& policy, long horizon) {
  if (horizon < 4 || (horizon & (horizon - 1)) != 0)
    throw std::invalid_argument("interval_composition_adversary: T must be a power of two >= 4");
  const long block = static_cast<long>(std::log2(static_cast<double>(horizon)));
  const double m = static_cast<double>(block) / 100.0;
  const double a = m * std::pow(2.0, -4.0 * m);
  const long blocks = horizon / block;
  AdversaryRun run;
  run.losses.reserve(static_cast<std::size_t>(horizon));
  GainTracker total(1.0);
  for (long b = 0; b < blocks; ++b) {
    GainTracker tracker(1.0);
    const bool mirrored = policy.weight() > 0.5;
    enum class Phase { probe, punish, freeze };
    Phase phase = Phase::probe;
    bool punished = false;
    for (long t = 0; t < block; ++t) {
      std::array<double, 2> loss{};
      switch (phase) {
        case Phase::probe:
          loss = mirrored ? std::array<double, 2>{0.0, 1.0} : std::array<double, 2>{1.0, 0.0};
          break;
        case Phase::punish:
          loss = mirrored ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
          phase = Phase::freeze;
          punished = true;
          break;
        case Phase::freeze:
          loss = {0.5, 0.5};
          break;
      }
      const double z = policy.weight();
      tracker.record(z, loss[0], loss[1]);
      total.record(z, loss[0], loss[1]);
      policy.observe(loss[0], loss[1]);
      run.losses.push_back(loss);
      if (phase == Phase::probe) {
        const double z_next = policy.weight();
        const double threshold = std::max(0.5 + tracker.gain() + a, 0.0);
        const bool crossed = mirrored ? (1.0 - z_next) > threshold : z_next > threshold;
        if (crossed) phase = Phase::punish;
      }
    }
    run.blocks.push_back({tracker.loss(), punished});
  }
  while (static_cast<long>(run.losses.size()) < horizon) {
    const double z = policy.weight();
    total.record(z, 0.5, 0.5);
    policy.observe(0.5, 0.5);
    run.losses.push_back({0.5, 0.5});
  }
  run.algorithm_loss = total.loss();
  return run;
}

enum class WorkloadKind { iid, piecewise_stationary, flip_flop };

struct WorkloadParams {
  std::size_t num_experts = 2;
  long horizon = 0;
  // iid: per-expert Bernoulli miss probabilities (size num_experts, or one
  // value broadcast to all experts).
  std::vector<double> bernoulli{0.5};
  // piecewise_stationary: number of segments; the favored expert rotates and
  // draws Bernoulli(p_low) while the rest draw Bernoulli(p_high).
  long segments = 4;
  double p_low = 0.1;
  double p_high = 0.6;
  // flip_flop: deterministic (1,0)/(0,1) blocks of this length.
  long block = 10;
};

inline std::vector<LossVector> generate_workload(WorkloadKind kind, const WorkloadParams& params,
                                                 Rng& rng) {
  if (params.horizon < 1 || params.num_experts < 2)
    throw std::invalid_argument("generate_workload: bad parameters");
  std::vector<LossVector> out;
  out.reserve(static_cast<std::size_t>(params.horizon));
  switch (kind) {
    case WorkloadKind::iid: {
      std::vector<double> p = params.bernoulli;
      if (p.size() == 1) p.assign(params.num_experts, p[0]);
      if (p.size() != params.num_experts)
        throw std::invalid_argument("generate_workload: Bernoulli vector size mismatch");
      for (long t = 0; t < params.horizon; ++t) {
        std::vector<double> l(params.num_experts);
        for (std::size_t i = 0; i < l.size(); ++i) l[i] = uniform01(rng) < p[i] ? 1.0 : 0.0;
        out.emplace_back(std::move(l));
      }
      break;
    }
    case WorkloadKind::piecewise_stationary: {
      if (params.segments < 1) throw std::invalid_argument("generate_workload: segments < 1");
      const long seg_len = (params.horizon + params.segments - 1) / params.segments;
      for (long t = 0; t < params.horizon; ++t) {
        const std::size_t favored =
            static_cast<std::size_t>((t / seg_len) % static_cast<long>(params.num_experts));
        std::vector<double> l(params.num_experts);
        for (std::size_t i = 0; i < l.size(); ++i) {
          const double p = i == favored ? params.p_low : params.p_high;
          l[i] = uniform01(rng) < p ? 1.0 : 0.0;
        }
        out.emplace_back(std::move(l));
      }
      break;
    }
    case WorkloadKind::flip_flop: {
      if (params.block < 1) throw std::invalid_argument("generate_workload: block < 1");
      for (long t = 0; t < params.horizon; ++t) {
        const bool first_loses = (t / params.block) % 2 == 0;
        std::vector<double> l(params.num_experts, 1.0);
        l[first_loses ? 1 : 0] = 0.0;
        out.emplace_back(std::move(l));
      }
      break;
    }
  }
  return out;
}

}  // namespace olsc
