#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "olsc/adversary.hpp"
#include "olsc/combiner.hpp"
#include "olsc/csv.hpp"
#include "olsc/drift_gate.hpp"
#include "olsc/experts.hpp"
#include "olsc/paging.hpp"
#include "olsc/simplex.hpp"

namespace olsc {

// Closed interval of rounds, 1-based.
struct Interval {
  long start = 1;
  long end = 1;
  long length() const { return end - start + 1; }
};

// All dyadic nodes covering [1, T]: 2T - 1 intervals for T a power of two.
inline std::vector<Interval> dyadic_intervals(long horizon) {
  if (horizon < 1 || (horizon & (horizon - 1)) != 0)
    throw std::invalid_argument("dyadic_intervals: T must be a power of two");
  std::vector<Interval> out;
  for (long len = 1; len <= horizon; len *= 2)
    for (long s = 1; s + len - 1 <= horizon; s += len) out.push_back({s, s + len - 1});
  return out;
}

// Greedy decomposition of an arbitrary interval into disjoint aligned dyadic
// blocks (largest block first); used to assemble interval bounds by chaining.
inline std::vector<Interval> dyadic_decompose(Interval i) {
  std::vector<Interval> out;
  long s = i.start;
  while (s <= i.end) {
    long len = 1;
    while ((s - 1) % (2 * len) == 0 && s + 2 * len - 1 <= i.end + 1 && 2 * len <= i.end - s + 1)
      len *= 2;
    out.push_back({s, s + len - 1});
    s += len;
  }
  return out;
}

enum class ComparatorKind {
  best_fixed_expert,
  fixed_expert,
  best_fixed_cache,
  s_switch_sequence,
  base_algorithm
};

inline const char* comparator_name(ComparatorKind kind) {
  switch (kind) {
    case ComparatorKind::best_fixed_expert: return "best_fixed_expert";
    case ComparatorKind::fixed_expert: return "fixed_expert";
    case ComparatorKind::best_fixed_cache: return "best_fixed_cache";
    case ComparatorKind::s_switch_sequence: return "s_switch_sequence";
    case ComparatorKind::base_algorithm: return "base_algorithm";
  }
  return "?";
}

struct RegretReport {
  Interval interval;
  double algorithm_loss = 0.0;
  double comparator_loss = 0.0;
  ComparatorKind comparator = ComparatorKind::best_fixed_expert;
  double regret = 0.0;
  double bound = std::numeric_limits<double>::infinity();
  bool bound_satisfied = true;
};

// Fractional run over the simplex with prefix sums for O(N) interval queries.
// Movement into round t is D tv(x_{t-1}, x_t) and is charged for every round
// of an interval except its first.
class RunTrace {
 public:
  RunTrace(std::vector<SimplexPoint> actions, std::vector<LossVector> losses,
           double switching_cost)
      : actions_(std::move(actions)), losses_(std::move(losses)), d_(switching_cost) {
    if (actions_.empty() || actions_.size() != losses_.size())
      throw std::invalid_argument("RunTrace: length mismatch");
    const std::size_t n = actions_[0].size();
    const std::size_t horizon = actions_.size();
    service_prefix_.assign(horizon + 1, 0.0);
    movement_prefix_.assign(horizon + 1, 0.0);
    expert_prefix_.assign(n, std::vector<double>(horizon + 1, 0.0));
    for (std::size_t t = 1; t <= horizon; ++t) {
      service_prefix_[t] = service_prefix_[t - 1] + dot(losses_[t - 1], actions_[t - 1]);
      movement_prefix_[t] =
          movement_prefix_[t - 1] +
          (t > 1 ? d_ * tv_distance(actions_[t - 2], actions_[t - 1]) : 0.0);
      for (std::size_t i = 0; i < n; ++i)
        expert_prefix_[i][t] = expert_prefix_[i][t - 1] + losses_[t - 1][i];
    }
  }

  long horizon() const { return static_cast<long>(actions_.size()); }
  std::size_t num_experts() const { return actions_[0].size(); }
  double switching_cost() const { return d_; }
  const std::vector<SimplexPoint>& actions() const { return actions_; }
  const std::vector<LossVector>& losses() const { return losses_; }

  double service_loss(Interval i) const {
    check(i);
    return service_prefix_[static_cast<std::size_t>(i.end)] -
           service_prefix_[static_cast<std::size_t>(i.start - 1)];
  }

  // Movement charged inside the interval, first step exempt.
  double movement(Interval i) const {
    check(i);
    return movement_prefix_[static_cast<std::size_t>(i.end)] -
           movement_prefix_[static_cast<std::size_t>(i.start)];
  }

  double algorithm_loss(Interval i) const { return service_loss(i) + movement(i); }

  double expert_loss(std::size_t expert, Interval i) const {
    check(i);
    return expert_prefix_.at(expert)[static_cast<std::size_t>(i.end)] -
           expert_prefix_.at(expert)[static_cast<std::size_t>(i.start - 1)];
  }

  double best_fixed_expert_loss(Interval i) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < num_experts(); ++e) best = std::min(best, expert_loss(e, i));
    return best;
  }

 private:
  void check(Interval i) const {
    if (i.start < 1 || i.end > horizon() || i.start > i.end)
      throw std::invalid_argument("RunTrace: interval out of range");
  }

  std::vector<SimplexPoint> actions_;
  std::vector<LossVector> losses_;
  double d_;
  std::vector<double> service_prefix_;
  std::vector<double> movement_prefix_;
  std::vector<std::vector<double>> expert_prefix_;
};

// Minimum loss over integral expert sequences with at most s switches inside
// the interval; switches cost D each, the first step is exempt.
inline double best_s_switch_comparator(std::span<const LossVector> losses, Interval i,
                                       long switches, double switching_cost) {
  if (switches < 0) throw std::invalid_argument("best_s_switch_comparator: s < 0");
  if (i.start < 1 || i.end > static_cast<long>(losses.size()) || i.start > i.end)
    throw std::invalid_argument("best_s_switch_comparator: interval out of range");
  const std::size_t n = losses[static_cast<std::size_t>(i.start - 1)].size();
  const std::size_t budget = static_cast<std::size_t>(std::min<long>(switches, i.length() - 1));
  const double inf = std::numeric_limits<double>::infinity();
  // cost[j][e]: best loss so far ending at expert e with j switches used.
  std::vector<std::vector<double>> cost(budget + 1, std::vector<double>(n, inf));
  for (std::size_t e = 0; e < n; ++e) cost[0][e] = losses[static_cast<std::size_t>(i.start - 1)][e];
  for (long t = i.start + 1; t <= i.end; ++t) {
    const LossVector& l = losses[static_cast<std::size_t>(t - 1)];
    std::vector<std::vector<double>> next(budget + 1, std::vector<double>(n, inf));
    for (std::size_t j = 0; j <= budget; ++j) {
      double best_prev = inf;
      std::size_t best_arg = 0;
      double second_prev = inf;
      if (j > 0) {
        for (std::size_t e = 0; e < n; ++e) {
          const double c = cost[j - 1][e];
          if (c < best_prev) {
            second_prev = best_prev;
            best_prev = c;
            best_arg = e;
          } else if (c < second_prev) {
            second_prev = c;
          }
        }
      }
      for (std::size_t e = 0; e < n; ++e) {
        double v = cost[j][e];
        if (j > 0) {
          const double from = e == best_arg ? second_prev : best_prev;
          v = std::min(v, from + switching_cost);
        }
        next[j][e] = v + l[e];
      }
    }
    cost = std::move(next);
  }
  double best = inf;
  for (const auto& row : cost)
    for (double v : row) best = std::min(best, v);
  return best;
}

struct ComparatorSpec {
  ComparatorKind kind = ComparatorKind::best_fixed_expert;
  std::size_t expert = 0;            // fixed_expert
  long switches = 0;                 // s_switch_sequence
  const RunTrace* base = nullptr;    // base_algorithm
};

inline RegretReport interval_regret(const RunTrace& trace, Interval i, const ComparatorSpec& spec,
                                    double bound = std::numeric_limits<double>::infinity()) {
  RegretReport report;
  report.interval = i;
  report.comparator = spec.kind;
  report.algorithm_loss = trace.algorithm_loss(i);
  switch (spec.kind) {
    case ComparatorKind::best_fixed_expert:
      report.comparator_loss = trace.best_fixed_expert_loss(i);
      break;
    case ComparatorKind::fixed_expert:
      report.comparator_loss = trace.expert_loss(spec.expert, i);
      break;
    case ComparatorKind::s_switch_sequence:
      report.comparator_loss =
          best_s_switch_comparator(trace.losses(), i, spec.switches, trace.switching_cost());
      break;
    case ComparatorKind::base_algorithm:
      if (!spec.base) throw std::invalid_argument("interval_regret: missing base trace");
      report.comparator_loss = spec.base->algorithm_loss(i);
      break;
    case ComparatorKind::best_fixed_cache:
      throw std::invalid_argument("interval_regret: cache comparator applies to paging runs");
  }
  report.regret = report.algorithm_loss - report.comparator_loss;
  report.bound = bound;
  report.bound_satisfied = report.regret <= bound;
  return report;
}

// ---------------------------------------------------------------------------
// Paging side: request traces, fixed-cache comparators, offline optimum.
// ---------------------------------------------------------------------------

struct PagingRun {
  std::vector<int> requests;          // page per round
  std::vector<double> miss;           // realized service loss per round
  std::vector<double> movement_in;    // movement charged entering round t (0 for t=1)
  std::vector<double> frac_miss;      // optional fractional mirrors (empty if n/a)
  std::vector<double> frac_movement_in;

  long horizon() const { return static_cast<long>(requests.size()); }

  double loss(Interval i) const {
    double s = 0.0;
    for (long t = i.start; t <= i.end; ++t) {
      s += miss[static_cast<std::size_t>(t - 1)];
      if (t > i.start) s += movement_in[static_cast<std::size_t>(t - 1)];
    }
    return s;
  }

  double fractional_loss(Interval i) const {
    double s = 0.0;
    for (long t = i.start; t <= i.end; ++t) {
      s += frac_miss[static_cast<std::size_t>(t - 1)];
      if (t > i.start) s += frac_movement_in[static_cast<std::size_t>(t - 1)];
    }
    return s;
  }
};

// Loss of the best fixed cache on the interval: |I| minus the k largest
// request counts (a fixed cache never moves).
inline double best_fixed_cache_loss(std::span<const int> requests, Interval i, int num_pages,
                                    int subset_size) {
  if (i.start < 1 || i.end > static_cast<long>(requests.size()) || i.start > i.end)
    throw std::invalid_argument("best_fixed_cache_loss: interval out of range");
  std::vector<long> counts(static_cast<std::size_t>(num_pages) + 1, 0);
  for (long t = i.start; t <= i.end; ++t) {
    const int p = requests[static_cast<std::size_t>(t - 1)];
    if (p < 1 || p > num_pages) throw std::invalid_argument("best_fixed_cache_loss: bad page id");
    ++counts[static_cast<std::size_t>(p)];
  }
  std::sort(counts.begin() + 1, counts.end(), std::greater<long>());
  long covered = 0;
  for (int j = 1; j <= subset_size; ++j) covered += counts[static_cast<std::size_t>(j)];
  return static_cast<double>(i.length()) - static_cast<double>(covered);
}

// Exact offline optimum of the paging MTS (halved units: loss 1 when the
// request is outside the chosen cache, 1/2 per evicted page, free initial
// configuration, offline sees the request before choosing). Lazy single-swap
// dynamic program over all k-subsets; guarded to desk scale.
inline double offline_paging_opt(std::span<const int> requests, int num_pages, int subset_size) {
  if (num_pages > 16 || subset_size > 4)
    throw std::invalid_argument("offline_paging_opt: guarded to n <= 16, k <= 4");
  if (requests.empty()) return 0.0;
  std::vector<std::vector<int>> configs;
  std::vector<int> pick;
  const std::function<void(int)> enumerate = [&](int from) {
    if (static_cast<int>(pick.size()) == subset_size) {
      configs.push_back(pick);
      return;
    }
    for (int p = from; p <= num_pages; ++p) {
      pick.push_back(p);
      enumerate(p + 1);
      pick.pop_back();
    }
  };
  enumerate(1);
  const auto config_index = [&](const std::vector<int>& c) {
    return static_cast<std::size_t>(
        std::lower_bound(configs.begin(), configs.end(), c) - configs.begin());
  };
  const auto loss_of = [&](const std::vector<int>& c, int page) {
    return std::binary_search(c.begin(), c.end(), page) ? 0.0 : 1.0;
  };
  std::vector<double> cost(configs.size());
  for (std::size_t s = 0; s < configs.size(); ++s) cost[s] = loss_of(configs[s], requests[0]);
  for (std::size_t t = 1; t < requests.size(); ++t) {
    std::vector<double> next(configs.size(), std::numeric_limits<double>::infinity());
    for (std::size_t s = 0; s < configs.size(); ++s) {
      if (cost[s] < next[s]) next[s] = cost[s];
      const std::vector<int>& c = configs[s];
      for (int out_pos = 0; out_pos < subset_size; ++out_pos) {
        for (int in = 1; in <= num_pages; ++in) {
          if (std::binary_search(c.begin(), c.end(), in)) continue;
          std::vector<int> moved = c;
          moved[static_cast<std::size_t>(out_pos)] = in;
          std::sort(moved.begin(), moved.end());
          const std::size_t s2 = config_index(moved);
          if (cost[s] + 0.5 < next[s2]) next[s2] = cost[s] + 0.5;
        }
      }
    }
    for (std::size_t s = 0; s < configs.size(); ++s) next[s] += loss_of(configs[s], requests[t]);
    cost = std::move(next);
  }
  return *std::min_element(cost.begin(), cost.end());
}

struct CompetitiveReport {
  double algorithm_loss = 0.0;
  double offline_opt = 0.0;
  std::optional<double> ratio;  // empty when the offline optimum is zero
};

inline CompetitiveReport competitive_ratio(double algorithm_loss, double offline_opt) {
  CompetitiveReport r;
  r.algorithm_loss = algorithm_loss;
  r.offline_opt = offline_opt;
  if (offline_opt > 0.0) r.ratio = algorithm_loss / offline_opt;
  return r;
}

// ---------------------------------------------------------------------------
// Request trace generators (text format: one page id per line).
// ---------------------------------------------------------------------------

inline std::vector<int> zipf_trace(int num_pages, long horizon, double exponent, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(num_pages));
  double total = 0.0;
  for (int p = 1; p <= num_pages; ++p) {
    w[static_cast<std::size_t>(p - 1)] = 1.0 / std::pow(static_cast<double>(p), exponent);
    total += w[static_cast<std::size_t>(p - 1)];
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t)
    out.push_back(static_cast<int>(sample_weighted(w, total, rng)) + 1);
  return out;
}

// Zipf ranks re-shuffled every T/phases rounds, so the optimal fixed cache
// changes at phase boundaries.
inline std::vector<int> phase_trace(int num_pages, long horizon, long phases, double exponent,
                                    Rng& rng) {
  if (phases < 1) throw std::invalid_argument("phase_trace: phases < 1");
  std::vector<int> ranks(static_cast<std::size_t>(num_pages));
  for (int p = 0; p < num_pages; ++p) ranks[static_cast<std::size_t>(p)] = p + 1;
  const long phase_len = horizon / phases;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(horizon));
  std::vector<double> w(static_cast<std::size_t>(num_pages));
  double total = 0.0;
  for (long t = 0; t < horizon; ++t) {
    if (t % std::max<long>(phase_len, 1) == 0) {
      for (std::size_t j = ranks.size(); j > 1; --j)
        std::swap(ranks[j - 1], ranks[uniform_index(rng, j)]);
      total = 0.0;
      for (int r = 0; r < num_pages; ++r) {
        w[static_cast<std::size_t>(ranks[static_cast<std::size_t>(r)] - 1)] =
            1.0 / std::pow(static_cast<double>(r + 1), exponent);
      }
      for (double v : w) total += v;
    }
    out.push_back(static_cast<int>(sample_weighted(w, total, rng)) + 1);
  }
  return out;
}

// Adversarial round-robin over the first m pages (classic marking stressor
// with m = k+1).
inline std::vector<int> round_robin_trace(int num_pages, long horizon, int cycle) {
  if (cycle < 1 || cycle > num_pages) throw std::invalid_argument("round_robin_trace: bad cycle");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(horizon));
  for (long t = 0; t < horizon; ++t) out.push_back(static_cast<int>(t % cycle) + 1);
  return out;
}

}  // namespace olsc
