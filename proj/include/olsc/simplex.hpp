#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "olsc/rng.hpp"

namespace olsc {

// Probability vector over N actions. Entries are validated and renormalized
// once at construction so that numerical drift cannot accumulate over long
// runs of mixture updates.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("SimplexPoint: empty weight vector");
    double sum = 0.0;
    for (double& w : weights_) {
      if (w < 0.0) {
        if (w < -1e-12) throw std::invalid_argument("SimplexPoint: negative entry");
        w = 0.0;
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("SimplexPoint: weights sum to " + std::to_string(sum));
    for (double& w : weights_) w /= sum;
  }

  static SimplexPoint uniform(std::size_t n) {
    return SimplexPoint(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  static SimplexPoint point_mass(std::size_t n, std::size_t index) {
    std::vector<double> w(n, 0.0);
    w.at(index) = 1.0;
    return SimplexPoint(std::move(w));
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Per-round loss vector, entries in [0,1].
class LossVector {
 public:
  explicit LossVector(std::vector<double> losses) : losses_(std::move(losses)) {
    if (losses_.empty()) throw std::invalid_argument("LossVector: empty");
    for (double l : losses_)
      if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("LossVector: entry outside [0,1]");
  }

  std::size_t size() const { return losses_.size(); }
  double operator[](std::size_t i) const { return losses_[i]; }
  const std::vector<double>& values() const { return losses_; }

 private:
  std::vector<double> losses_;
};

inline double dot(const LossVector& l, const SimplexPoint& z) {
  if (l.size() != z.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += l[i] * z[i];
  return s;
}

// Total variation distance, half the L1 norm; equals the sum of positive
// parts of z' - z. The L1 form keeps symmetry exact in floating point.
inline double tv_distance(const SimplexPoint& z, const SimplexPoint& z_next) {
  if (z.size() != z_next.size()) throw std::invalid_argument("tv_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += std::abs(z_next[i] - z[i]);
  return 0.5 * s;
}

// Joint distribution over consecutive action pairs whose disagreement
// probability equals the TV distance of the marginals.
struct CouplingPlan {
  std::size_t n = 0;
  std::vector<double> joint;  // row-major n x n
  double switch_prob = 0.0;

  double at(std::size_t i, std::size_t j) const { return joint[i * n + j]; }
};

// joint(i,j) = min(z_i, z'_j) 1[i=j] + (z_i - z'_i)_+ (z'_j - z_j)_+ / tv,
// with the second term taken as 0 when z = z'.
inline CouplingPlan build_coupling(const SimplexPoint& z, const SimplexPoint& z_next) {
  if (z.size() != z_next.size()) throw std::invalid_argument("build_coupling: dimension mismatch");
  const std::size_t n = z.size();
  const double tv = tv_distance(z, z_next);
  CouplingPlan plan;
  plan.n = n;
  plan.switch_prob = tv;
  plan.joint.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    plan.joint[i * n + i] = std::min(z[i], z_next[i]);
    if (tv <= 0.0) continue;
    const double out_i = std::max(z[i] - z_next[i], 0.0);
    if (out_i == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const double in_j = std::max(z_next[j] - z[j], 0.0);
      if (in_j > 0.0) plan.joint[i * n + j] += out_i * in_j / tv;
    }
  }
  return plan;
}

// Given `current` distributed per z, draw the next action distributed per
// z_next while switching with probability exactly tv_distance(z, z_next):
// with probability (z_i - z'_i)_+ / z_i resample from (z' - z)_+ / tv.
inline std::size_t transition_sample(std::size_t current, const SimplexPoint& z,
                                     const SimplexPoint& z_next, Rng& rng) {
  if (z.size() != z_next.size())
    throw std::invalid_argument("transition_sample: dimension mismatch");
  if (current >= z.size() || z[current] <= 0.0)
    throw std::invalid_argument("transition_sample: current action has zero mass under z");
  const double leave = std::max(z[current] - z_next[current], 0.0) / z[current];
  if (leave <= 0.0 || uniform01(rng) >= leave) return current;
  const double tv = tv_distance(z, z_next);
  std::vector<double> gain(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) gain[j] = std::max(z_next[j] - z[j], 0.0);
  return sample_weighted(gain, tv, rng);
}

struct RolloutResult {
  std::vector<std::size_t> actions;
  double total_loss = 0.0;  // realized service loss + D per switch
  long switches = 0;
};

// Convert a fractional play sequence into integral expert play by chaining
// minimal-switch transitions. Expected total loss equals the fractional loss
// sum <l_t, x_t> + D sum tv(x_t, x_{t-1}).
inline RolloutResult rollout(std::span<const SimplexPoint> fractional_plays,
                             std::span<const LossVector> losses, double switching_cost,
                             Rng& rng) {
  if (fractional_plays.size() != losses.size() || fractional_plays.empty())
    throw std::invalid_argument("rollout: sequence length mismatch");
  RolloutResult result;
  result.actions.reserve(fractional_plays.size());
  std::size_t action = sample_weighted(fractional_plays[0].weights(), 1.0, rng);
  result.actions.push_back(action);
  result.total_loss = losses[0][action];
  for (std::size_t t = 1; t < fractional_plays.size(); ++t) {
    const std::size_t next =
        transition_sample(action, fractional_plays[t - 1], fractional_plays[t], rng);
    if (next != action) {
      result.total_loss += switching_cost;
      ++result.switches;
    }
    action = next;
    result.actions.push_back(action);
    result.total_loss += losses[t][action];
  }
  return result;
}

}  // namespace olsc
