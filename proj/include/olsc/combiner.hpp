#pragma once

#include <cassert>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "olsc/drift_gate.hpp"
#include "olsc/experts.hpp"
#include "olsc/simplex.hpp"

namespace olsc {

// Scaled loss of a sub-algorithm: (<l, z_t> + D ||z_t - z_{t+1}||) / (M+1).
// The slowness contract (D * movement <= M) keeps the result in [0,1].
inline double scaled_loss(const LossVector& l, const SimplexPoint& z_now,
                          const SimplexPoint& z_next, double switching_cost, double m_bound) {
  const double v =
      (dot(l, z_now) + switching_cost * tv_distance(z_now, z_next)) / (m_bound + 1.0);
  if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
    throw std::runtime_error("scaled_loss: value outside [0,1]; slowness contract violated");
  return std::min(1.0, std::max(0.0, v));
}

// Pairwise combination of two slow algorithms through a drift gate. Emits
// (1-g) z0 + g z1, so g = 0 follows the protected algorithm A0 exactly; a
// dormant gate (tau < 64 D ln(1/Z)) always emits A0's action. After the loss
// arrives both children advance, their scaled losses are formed from the
// (action, next action) pairs, and the gate drifts by (l~(0) - l~(1))/sqrt(D).
class TwoCombiner : public SlowAlgorithm {
 public:
  TwoCombiner(std::shared_ptr<SlowAlgorithm> protected_algo,
              std::shared_ptr<SlowAlgorithm> challenger, double tau, double z_param,
              double switching_cost, double m_bound)
      : a0_(std::move(protected_algo)),
        a1_(std::move(challenger)),
        gate_(tau, z_param, switching_cost),
        m_(m_bound),
        action_(mix(a0_->current_action(), a1_->current_action(), gate_.weight())) {
    if (!a0_ || !a1_) throw std::invalid_argument("TwoCombiner: null sub-algorithm");
  }

  const SimplexPoint& current_action() const override { return action_; }

  void observe(const LossVector& loss) override {
    const SimplexPoint z0 = a0_->current_action();
    const SimplexPoint z1 = a1_->current_action();
    a0_->observe(loss);
    a1_->observe(loss);
    const SimplexPoint& z0_next = a0_->current_action();
    const SimplexPoint& z1_next = a1_->current_action();
    assert(tv_distance(z0, z0_next) <= a0_->declared_slowness() + 1e-9);
    assert(tv_distance(z1, z1_next) <= a1_->declared_slowness() + 1e-9);
    const double lt0 = scaled_loss(loss, z0, z0_next, gate_.switching_cost(), m_);
    const double lt1 = scaled_loss(loss, z1, z1_next, gate_.switching_cost(), m_);
    gate_.step(lt0, lt1);
    action_ = mix(z0_next, z1_next, gate_.weight());
  }

  double declared_slowness() const override {
    if (!gate_active()) return a0_->declared_slowness();
    return std::max(a0_->declared_slowness(), a1_->declared_slowness()) +
           slowness_growth(gate_.gate().tau(), gate_.gate().z_param(), gate_.switching_cost());
  }

  bool gate_active() const { return !gate_.dormant(); }
  double gate_weight() const { return gate_.weight(); }
  double m_bound() const { return m_; }
  const DriftGate& gate() const { return gate_; }

  // Slowness added by the gate on top of its children:
  // sqrt(ln(1/Z) / (4 tau D)) + Z / (8 sqrt(D)).
  static double slowness_growth(double tau, double z_param, double switching_cost) {
    return std::sqrt(std::log(1.0 / z_param) / (4.0 * tau * switching_cost)) +
           z_param / (8.0 * std::sqrt(switching_cost));
  }

 private:
  static SimplexPoint mix(const SimplexPoint& z0, const SimplexPoint& z1, double g) {
    if (g <= 0.0) return z0;
    std::vector<double> w(z0.size());
    for (std::size_t i = 0; i < z0.size(); ++i) w[i] = (1.0 - g) * z0[i] + g * z1[i];
    return SimplexPoint(std::move(w));
  }

  std::shared_ptr<SlowAlgorithm> a0_;
  std::shared_ptr<SlowAlgorithm> a1_;
  DriftGate gate_;
  double m_;
  SimplexPoint action_;
};

// Recursive chain B_{-1..K-1}: B_{-1} is the optional base (or the first
// level when absent) and B_u combines B_{u-1} with level u at tau_u = T/2^u.
// Z is shared across levels; the slowness ledger tracks the budget of each
// B_u and feeds the per-level scaled-loss bound M_u.
class CombinerStack : public SlowAlgorithm {
 public:
  CombinerStack(std::shared_ptr<SlowAlgorithm> base,
                std::vector<std::shared_ptr<SlowAlgorithm>> levels, long horizon,
                double switching_cost, double z_param)
      : horizon_(horizon) {
    if (horizon < 1 || (horizon & (horizon - 1)) != 0)
      throw std::invalid_argument("CombinerStack: T must be a power of two");
    if (!(z_param > 0.0 && z_param <= 1.0 / M_E))
      throw std::invalid_argument("CombinerStack: Z must lie in (0, 1/e]");
    if (levels.empty()) throw std::invalid_argument("CombinerStack: no level algorithms");
    for (const auto& a : levels)
      if (a->declared_slowness() > 1.0 / switching_cost + 1e-12)
        throw std::invalid_argument("CombinerStack: level algorithm slower than 1/D");

    std::size_t first = 0;
    if (base) {
      root_ = std::move(base);
    } else {
      root_ = levels[0];
      first = 1;
    }
    double budget = root_->declared_slowness();
    ledger_.push_back(budget);
    for (std::size_t u = first; u < levels.size(); ++u) {
      const double tau_u = static_cast<double>(horizon) / std::pow(2.0, static_cast<double>(u));
      const double m_u =
          switching_cost * std::max(budget, levels[u]->declared_slowness());
      auto combiner =
          std::make_shared<TwoCombiner>(root_, levels[u], tau_u, z_param, switching_cost, m_u);
      budget = std::max(budget, levels[u]->declared_slowness()) +
               (combiner->gate_active()
                    ? TwoCombiner::slowness_growth(tau_u, z_param, switching_cost)
                    : 0.0);
      ledger_.push_back(budget);
      combiners_.push_back(combiner);
      root_ = combiner;
    }
  }

  const SimplexPoint& current_action() const override { return root_->current_action(); }

  void observe(const LossVector& loss) override {
    if (round_ >= horizon_) throw std::logic_error("CombinerStack: stepping past T");
    ++round_;
    root_->observe(loss);
  }

  double declared_slowness() const override { return root_->declared_slowness(); }

  // Emit the current action and advance on the loss.
  SimplexPoint step(const LossVector& loss) {
    SimplexPoint action = current_action();
    observe(loss);
    return action;
  }

  const std::vector<double>& slowness_ledger() const { return ledger_; }
  const std::vector<std::shared_ptr<TwoCombiner>>& combiners() const { return combiners_; }
  long round() const { return round_; }

 private:
  std::shared_ptr<SlowAlgorithm> root_;
  std::vector<std::shared_ptr<TwoCombiner>> combiners_;
  std::vector<double> ledger_;
  long horizon_;
  long round_ = 0;
};

}  // namespace olsc
