#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include "olsc/simplex.hpp"

namespace olsc {

// An online policy over the simplex whose consecutive actions move by at most
// declared_slowness() in TV distance.
class SlowAlgorithm {
 public:
  virtual ~SlowAlgorithm() = default;
  virtual const SimplexPoint& current_action() const = 0;
  virtual void observe(const LossVector& loss) = 0;
  virtual double declared_slowness() const = 0;
};

// One multiplicative update with an additive uniform share, renormalized:
// z'(i) = (z(i) e^{-eta l(i)} + share) / sum_j (...).
inline SimplexPoint fixed_share_update(const SimplexPoint& z, const LossVector& l, double eta,
                                       double share) {
  if (z.size() != l.size()) throw std::invalid_argument("fixed_share_update: dimension mismatch");
  std::vector<double> w(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    w[i] = z[i] * std::exp(-eta * l[i]) + share;
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return SimplexPoint(std::move(w));
}

inline SimplexPoint mw_update(const SimplexPoint& z, const LossVector& l, double eta) {
  return fixed_share_update(z, l, eta, 0.0);
}

// Fixed Share with switching-cost-aware step size. Frozen (never updates)
// when tau < 16 D ln(N tau), in which case it is 0-slow.
class FixedShare : public SlowAlgorithm {
 public:
  FixedShare(std::size_t num_experts, double tau, double switching_cost)
      : z_(SimplexPoint::uniform(num_experts)),
        eta_(std::sqrt(std::log(static_cast<double>(num_experts) * tau) /
                       (switching_cost * tau))),
        share_(1.0 / (static_cast<double>(num_experts) * tau)),
        frozen_(tau < 16.0 * switching_cost * std::log(static_cast<double>(num_experts) * tau)) {
    if (num_experts < 1 || !(tau >= 1.0) || !(switching_cost >= 1.0))
      throw std::invalid_argument("FixedShare: bad parameters");
  }

  const SimplexPoint& current_action() const override { return z_; }

  void observe(const LossVector& loss) override {
    if (frozen_) return;
    z_ = fixed_share_update(z_, loss, eta_, share_);
  }

  double declared_slowness() const override { return frozen_ ? 0.0 : eta_; }

  double eta() const { return eta_; }
  bool frozen() const { return frozen_; }

 private:
  SimplexPoint z_;
  double eta_;
  double share_;
  bool frozen_;
};

// Plain multiplicative weights over the full horizon, eta = sqrt(ln N / (2 D T)).
class MultiplicativeWeights : public SlowAlgorithm {
 public:
  MultiplicativeWeights(std::size_t num_experts, long horizon, double switching_cost)
      : z_(SimplexPoint::uniform(num_experts)),
        eta_(std::sqrt(std::log(static_cast<double>(num_experts)) /
                       (2.0 * switching_cost * static_cast<double>(horizon)))) {
    if (num_experts < 1 || horizon < 1 || !(switching_cost >= 1.0))
      throw std::invalid_argument("MultiplicativeWeights: bad parameters");
  }

  const SimplexPoint& current_action() const override { return z_; }
  void observe(const LossVector& loss) override { z_ = mw_update(z_, loss, eta_); }
  double declared_slowness() const override { return eta_; }
  double eta() const { return eta_; }

 private:
  SimplexPoint z_;
  double eta_;
};

// Never moves; 0-slow. Stands in for a competitive base in expert-space runs.
class ConstantPolicy : public SlowAlgorithm {
 public:
  explicit ConstantPolicy(SimplexPoint action) : z_(std::move(action)) {}
  const SimplexPoint& current_action() const override { return z_; }
  void observe(const LossVector&) override {}
  double declared_slowness() const override { return 0.0; }

 private:
  SimplexPoint z_;
};

}  // namespace olsc
