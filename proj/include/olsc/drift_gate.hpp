#pragma once

#include <cmath>
#include <stdexcept>

namespace olsc {

// Half-Gaussian integral erf(x) = int_0^x exp(-s^2/2) ds, expressed through
// the standard error function to avoid quadrature error.
inline double erf_half_gauss(double x) {
  return std::sqrt(M_PI / 2.0) * std::erf(x / std::sqrt(2.0));
}

namespace detail {
inline double gate_raw_unchecked(double tau, double z_param, double x) {
  return std::sqrt(tau / 8.0) * z_param * erf_half_gauss(x / std::sqrt(8.0 * tau)) *
         std::exp(x * x / (16.0 * tau));
}
}  // namespace detail

// Unit crossing of the unclamped gate: the U with g~(U) = 1, located by
// bisection on [0, sqrt(16 tau ln(1/Z)) + 1].
inline double solve_threshold(double tau, double z_param) {
  if (!(tau >= 1.0)) throw std::invalid_argument("solve_threshold: tau must be >= 1");
  if (!(z_param > 0.0 && z_param <= 1.0 / M_E))
    throw std::invalid_argument("solve_threshold: Z must lie in (0, 1/e]");
  double lo = 0.0;
  double hi = std::sqrt(16.0 * tau * std::log(1.0 / z_param)) + 1.0;
  if (detail::gate_raw_unchecked(tau, z_param, hi) < 1.0)
    throw std::runtime_error("solve_threshold: bracket failure (parameter regime violation)");
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double val = detail::gate_raw_unchecked(tau, z_param, mid);
    if (std::abs(val - 1.0) <= 1e-9) return mid;
    (val < 1.0 ? lo : hi) = mid;
  }
  throw std::runtime_error("solve_threshold: bisection did not converge");
}

// The gating potential g~ and its clamp g = min(1, max(0, g~)). Solves the
// ODE 8 g~'(x) = x g~(x)/tau + Z with g~(0) = 0; strictly increasing and odd.
class GateFunction {
 public:
  GateFunction(double tau, double z_param)
      : tau_(tau), z_(z_param), u_(solve_threshold(tau, z_param)) {}

  double tau() const { return tau_; }
  double z_param() const { return z_; }
  double threshold() const { return u_; }  // U with g~(U) = 1

  // Overflow guard: exp(x^2 / (16 tau)) stays far below the double range for
  // |x| <= 100 sqrt(tau), which also covers the unit crossing for any
  // Z >= e^{-625/16}.
  double raw(double x) const {
    if (std::abs(x) > 100.0 * std::sqrt(tau_))
      throw std::invalid_argument("GateFunction::raw: |x| outside guarded range");
    return detail::gate_raw_unchecked(tau_, z_, x);
  }

  // g(x): 0 for x <= 0, 1 for x >= U, g~(x) in between. Safe for any x.
  double clamped(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= u_) return 1.0;
    return std::min(1.0, detail::gate_raw_unchecked(tau_, z_, x));
  }

 private:
  double tau_;
  double z_;
  double u_;
};

// Two-experts switching-cost algorithm. The projected variant clamps the
// drift to [-2, U+2] every step; the bounded-horizon variant starts from an
// arbitrary x1 in that range, never projects, and refuses steps past its
// horizon. A gate whose parameters satisfy D ln(1/Z) > tau/64 is dormant and
// always emits weight 0.
class DriftGate {
 public:
  DriftGate(double tau, double z_param, double switching_cost)
      : gate_(tau, z_param), d_(check_cost(switching_cost)), x_(0.0), projected_(true) {}

  static DriftGate bounded_horizon(double tau, double z_param, double switching_cost, double x1,
                                   long horizon) {
    DriftGate g(tau, z_param, switching_cost);
    if (x1 < -2.0 || x1 > g.gate_.threshold() + 2.0)
      throw std::invalid_argument("DriftGate: x1 outside [-2, U+2]");
    g.projected_ = false;
    g.x_ = x1;
    g.horizon_ = horizon;
    return g;
  }

  bool dormant() const {
    return d_ * std::log(1.0 / gate_.z_param()) > gate_.tau() / 64.0;
  }

  // Probability weight placed on expert 1.
  double weight() const { return dormant() ? 0.0 : gate_.clamped(x_); }

  void step(double l0, double l1) {
    if (!(l0 >= -1e-12 && l0 <= 1.0 + 1e-12 && l1 >= -1e-12 && l1 <= 1.0 + 1e-12))
      throw std::invalid_argument("DriftGate::step: losses outside [0,1]");
    if (horizon_ == 0) throw std::logic_error("DriftGate::step: past bounded horizon");
    if (horizon_ > 0) --horizon_;
    const double b = (l0 - l1) / std::sqrt(d_);
    x_ = (1.0 - 1.0 / gate_.tau()) * x_ + b;
    if (projected_) {
      const double hi = gate_.threshold() + 2.0;
      x_ = std::min(hi, std::max(-2.0, x_));
    }
  }

  double drift() const { return x_; }
  double switching_cost() const { return d_; }
  bool projected() const { return projected_; }
  const GateFunction& gate() const { return gate_; }

 private:
  static double check_cost(double d) {
    if (!(d >= 1.0)) throw std::invalid_argument("DriftGate: switching cost must be >= 1");
    return d;
  }

  GateFunction gate_;
  double d_;
  double x_;
  bool projected_;
  long horizon_ = -1;  // -1: unbounded
};

}  // namespace olsc
