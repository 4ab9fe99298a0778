#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "olsc/drift_gate.hpp"
#include "olsc/rng.hpp"

namespace olsc {

// A full cache: sorted set of k distinct page ids in [1, n].
struct CacheConfig {
  std::vector<int> pages;

  bool contains(int page) const {
    return std::binary_search(pages.begin(), pages.end(), page);
  }
  bool operator==(const CacheConfig& other) const { return pages == other.pages; }
};

inline CacheConfig make_cache(std::vector<int> pages) {
  std::sort(pages.begin(), pages.end());
  if (std::adjacent_find(pages.begin(), pages.end()) != pages.end())
    throw std::invalid_argument("CacheConfig: duplicate page");
  return CacheConfig{std::move(pages)};
}

// Halved model: a request outside the cache loses 1.
inline double paging_loss(const CacheConfig& cache, int page) {
  return cache.contains(page) ? 0.0 : 1.0;
}

// Movement metric d(C1,C2) = |C1 \ C2| at cost 1/2 per evicted page.
inline double movement_cost(const CacheConfig& from, const CacheConfig& to) {
  std::size_t shared = 0;
  auto it = to.pages.begin();
  for (int p : from.pages) {
    it = std::lower_bound(it, to.pages.end(), p);
    if (it != to.pages.end() && *it == p) ++shared, ++it;
  }
  return 0.5 * static_cast<double>(from.pages.size() - shared);
}

namespace detail {
inline double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}
}  // namespace detail

// Positive per-page weights alpha (stored as logs) inducing the distribution
// p^k_alpha(A) = prod_{i in A} alpha_i / Psi_{n,k} over k-subsets. Psi is the
// elementary symmetric partition function, computed in the log domain by the
// recurrence Psi_{m,j} = alpha_m Psi_{m-1,j-1} + Psi_{m-1,j}.
class ProductWeights {
 public:
  ProductWeights(int num_pages, int subset_size)
      : ProductWeights(std::vector<double>(static_cast<std::size_t>(num_pages), 0.0),
                       subset_size) {}

  ProductWeights(std::vector<double> log_alpha, int subset_size)
      : log_alpha_(std::move(log_alpha)), k_(subset_size) {
    if (log_alpha_.empty() || k_ < 1 || k_ > n())
      throw std::invalid_argument("ProductWeights: need 1 <= k <= n");
  }

  int n() const { return static_cast<int>(log_alpha_.size()); }
  int k() const { return k_; }
  double log_weight(int page) const { return log_alpha_.at(index(page)); }
  const std::vector<double>& log_weights() const { return log_alpha_; }

  void boost(int page, double delta_log) {
    log_alpha_.at(index(page)) += delta_log;
    dirty_ = true;
  }

  // log Psi over j-subsets of the first m pages. Queries with j <= k hit the
  // cached O(n k) table; larger j (outside the sampling hot path) run a
  // one-off recurrence.
  double log_psi(int m, int j) const {
    if (j < 0 || m < 0 || m > n() || j > m)
      throw std::invalid_argument("ProductWeights::log_psi: need 0 <= j <= m <= n");
    if (j <= k_) {
      ensure_tables();
      return prefix_[idx(m, j)];
    }
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> col(static_cast<std::size_t>(j) + 1, neg_inf);
    col[0] = 0.0;
    for (int p = 1; p <= m; ++p)
      for (int jj = std::min(p, j); jj >= 1; --jj)
        col[static_cast<std::size_t>(jj)] = detail::log_sum_exp(
            log_alpha_[static_cast<std::size_t>(p - 1)] + col[static_cast<std::size_t>(jj - 1)],
            col[static_cast<std::size_t>(jj)]);
    return col[static_cast<std::size_t>(j)];
  }

  double log_subset_prob(const CacheConfig& cache) const {
    if (static_cast<int>(cache.pages.size()) != k_)
      throw std::invalid_argument("ProductWeights: subset has wrong cardinality");
    double lp = 0.0;
    for (int p : cache.pages) lp += log_alpha_[index(p)];
    return lp - log_psi(n(), k_);
  }

  double subset_prob(const CacheConfig& cache) const { return std::exp(log_subset_prob(cache)); }

  // Pr(page in A) under p^k_alpha.
  double include_prob(int page) const {
    ensure_tables();
    const int i = static_cast<int>(index(page)) + 1;  // 1-based position
    double acc = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= k_ - 1; ++j) {
      if (j > i - 1 || k_ - 1 - j > n() - i) continue;
      acc = detail::log_sum_exp(acc, prefix_[idx(i - 1, j)] + suffix_[idx(i + 1, k_ - 1 - j)]);
    }
    return std::exp(log_alpha_[index(page)] + acc - prefix_[idx(n(), k_)]);
  }

  // Exact sample from p^k_alpha in O(n k) after the DP tables are built.
  CacheConfig sample(Rng& rng) const {
    ensure_tables();
    std::vector<int> pages;
    pages.reserve(static_cast<std::size_t>(k_));
    int slots = k_;
    for (int m = n(); m >= 1 && slots > 0; --m) {
      double p_in;
      if (slots == m) {
        p_in = 1.0;
      } else {
        p_in = std::exp(log_alpha_[static_cast<std::size_t>(m - 1)] + prefix_[idx(m - 1, slots - 1)] -
                        prefix_[idx(m, slots)]);
      }
      if (uniform01(rng) < p_in) {
        pages.push_back(m);
        --slots;
      }
    }
    std::reverse(pages.begin(), pages.end());
    return CacheConfig{std::move(pages)};
  }

 private:
  std::size_t index(int page) const {
    if (page < 1 || page > n()) throw std::invalid_argument("ProductWeights: page out of range");
    return static_cast<std::size_t>(page - 1);
  }

  std::size_t idx(int m, int j) const {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(k_ + 1) +
           static_cast<std::size_t>(j);
  }

  void ensure_tables() const {
    if (!dirty_) return;
    const double neg_inf = -std::numeric_limits<double>::infinity();
    const std::size_t rows = static_cast<std::size_t>(n()) + 2;
    prefix_.assign(rows * static_cast<std::size_t>(k_ + 1), neg_inf);
    suffix_.assign(rows * static_cast<std::size_t>(k_ + 1), neg_inf);
    for (int m = 0; m <= n(); ++m) prefix_[idx(m, 0)] = 0.0;
    for (int m = 1; m <= n(); ++m)
      for (int j = 1; j <= std::min(m, k_); ++j)
        prefix_[idx(m, j)] = detail::log_sum_exp(
            log_alpha_[static_cast<std::size_t>(m - 1)] + prefix_[idx(m - 1, j - 1)],
            prefix_[idx(m - 1, j)]);
    for (int m = 1; m <= n() + 1; ++m) suffix_[idx(m, 0)] = 0.0;
    for (int m = n(); m >= 1; --m)
      for (int j = 1; j <= std::min(n() - m + 1, k_); ++j)
        suffix_[idx(m, j)] = detail::log_sum_exp(
            log_alpha_[static_cast<std::size_t>(m - 1)] + suffix_[idx(m + 1, j - 1)],
            suffix_[idx(m + 1, j)]);
    dirty_ = false;
  }

  std::vector<double> log_alpha_;
  int k_;
  mutable std::vector<double> prefix_;
  mutable std::vector<double> suffix_;
  mutable bool dirty_ = true;
};

// TV distance between the subset distributions before and after a single
// upward weight change: all the shifted mass enters sets containing the
// boosted page, so it equals the increase of that page's inclusion probability.
inline double subset_tv(const ProductWeights& older, const ProductWeights& newer,
                        int boosted_page) {
  return newer.include_prob(boosted_page) - older.include_prob(boosted_page);
}

// Couple A_prev ~ p^k_old to a sample of p^k_new while switching with
// probability exactly ||p^k_new - p^k_old||. Requires that `newer` raises
// exactly one coordinate of `older`. A set already containing the boosted
// page only gains probability and is kept; otherwise the stay probability is
// the uniform ratio Psi_old / Psi_new, and on a switch the boosted page is
// forced in with the remainder drawn from p^{k-1} over the other pages.
inline CacheConfig min_switch_transition(const CacheConfig& prev, const ProductWeights& older,
                                         const ProductWeights& newer, Rng& rng) {
  if (older.n() != newer.n() || older.k() != newer.k())
    throw std::invalid_argument("min_switch_transition: weight shape mismatch");
  int boosted = 0;
  for (int p = 1; p <= older.n(); ++p) {
    if (newer.log_weight(p) == older.log_weight(p)) continue;
    if (boosted != 0 || newer.log_weight(p) < older.log_weight(p))
      throw std::invalid_argument(
          "min_switch_transition: expected exactly one increased coordinate");
    boosted = p;
  }
  if (boosted == 0) return prev;
  if (prev.contains(boosted)) return prev;
  const double stay = std::exp(older.log_psi(older.n(), older.k()) -
                               newer.log_psi(newer.n(), newer.k()));
  if (uniform01(rng) >= 1.0 - stay) return prev;
  std::vector<double> reduced;
  reduced.reserve(static_cast<std::size_t>(newer.n() - 1));
  for (int p = 1; p <= newer.n(); ++p)
    if (p != boosted) reduced.push_back(newer.log_weight(p));
  ProductWeights rest(std::move(reduced), newer.k() - 1);
  CacheConfig partial = rest.sample(rng);
  std::vector<int> pages;
  pages.reserve(static_cast<std::size_t>(newer.k()));
  for (int p : partial.pages) pages.push_back(p < boosted ? p : p + 1);
  pages.push_back(boosted);
  return make_cache(std::move(pages));
}

// A paging policy in the prediction model: cache() is the configuration used
// for the upcoming request; serve() advances it for the next round.
class PagingPolicy {
 public:
  virtual ~PagingPolicy() = default;
  virtual const CacheConfig& cache() const = 0;
  virtual void serve(int page, Rng& rng) = 0;
};

// Multiplicative weights over k-subsets, run through the product-weights DP:
// eta = sqrt(ln C(n,k) / (k T)), the requested page's weight is multiplied by
// e^eta, and the cache follows the minimal-switch coupling.
class PagingMW : public PagingPolicy {
 public:
  PagingMW(int num_pages, int subset_size, long horizon, Rng& rng)
      : weights_(num_pages, subset_size),
        eta_(std::sqrt(log_binom(num_pages, subset_size) /
                       (static_cast<double>(subset_size) * static_cast<double>(horizon)))),
        cache_(weights_.sample(rng)) {
    if (horizon < 1) throw std::invalid_argument("PagingMW: horizon must be positive");
  }

  const CacheConfig& cache() const override { return cache_; }

  void serve(int page, Rng& rng) override {
    const double incl_old = weights_.include_prob(page);
    frac_miss_last_ = 1.0 - incl_old;
    ProductWeights older = weights_;
    weights_.boost(page, eta_);
    frac_tv_last_ = weights_.include_prob(page) - incl_old;
    cache_ = min_switch_transition(cache_, older, weights_, rng);
  }

  double eta() const { return eta_; }
  const ProductWeights& weights() const { return weights_; }
  // Fractional quantities of the last served round: expected miss under
  // p^k_alpha and the TV moved by the boost.
  double last_fractional_miss() const { return frac_miss_last_; }
  double last_fractional_tv() const { return frac_tv_last_; }

  static double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  }

 private:
  ProductWeights weights_;
  double eta_;
  CacheConfig cache_;
  double frac_miss_last_ = 0.0;
  double frac_tv_last_ = 0.0;
};

// Classic randomized marking. On a miss with every cached page marked the
// marks reset; the victim is uniform among unmarked pages.
class Marking : public PagingPolicy {
 public:
  Marking(int num_pages, int subset_size) : n_(num_pages) {
    if (subset_size < 1 || subset_size > num_pages)
      throw std::invalid_argument("Marking: need 1 <= k <= n");
    for (int p = 1; p <= subset_size; ++p) cache_.pages.push_back(p);
    marked_.assign(cache_.pages.size(), false);
  }

  const CacheConfig& cache() const override { return cache_; }

  void serve(int page, Rng& rng) override {
    if (page < 1 || page > n_) throw std::invalid_argument("Marking: page out of range");
    const auto it = std::lower_bound(cache_.pages.begin(), cache_.pages.end(), page);
    if (it != cache_.pages.end() && *it == page) {
      marked_[static_cast<std::size_t>(it - cache_.pages.begin())] = true;
      return;
    }
    if (std::find(marked_.begin(), marked_.end(), false) == marked_.end())
      std::fill(marked_.begin(), marked_.end(), false);
    std::vector<std::size_t> unmarked;
    for (std::size_t i = 0; i < marked_.size(); ++i)
      if (!marked_[i]) unmarked.push_back(i);
    const std::size_t victim = unmarked[uniform_index(rng, unmarked.size())];
    cache_.pages.erase(cache_.pages.begin() + static_cast<std::ptrdiff_t>(victim));
    marked_.erase(marked_.begin() + static_cast<std::ptrdiff_t>(victim));
    const auto pos = std::lower_bound(cache_.pages.begin(), cache_.pages.end(), page);
    const std::size_t at = static_cast<std::size_t>(pos - cache_.pages.begin());
    cache_.pages.insert(pos, page);
    marked_.insert(marked_.begin() + static_cast<std::ptrdiff_t>(at), true);
  }

 private:
  int n_;
  CacheConfig cache_;
  std::vector<bool> marked_;
};

// Restarts a fresh PagingMW every `period` rounds ("sequentially applying" an
// algorithm with horizon 2^-u T). The restart resamples the cache from the
// reset weights; the jump is ordinary movement for the caller.
class RestartingPagingMW : public PagingPolicy {
 public:
  RestartingPagingMW(int num_pages, int subset_size, long period, Rng& rng)
      : n_(num_pages), k_(subset_size), period_(period), inner_(num_pages, subset_size, period, rng) {}

  const CacheConfig& cache() const override { return inner_.cache(); }

  void serve(int page, Rng& rng) override {
    inner_.serve(page, rng);
    ++round_;
    // Reset after the last round of the window so that cache() already holds
    // the fresh sample when the next window opens.
    if (round_ % period_ == 0) inner_ = PagingMW(n_, k_, period_, rng);
  }

 private:
  int n_;
  int k_;
  long period_;
  long round_ = 0;
  PagingMW inner_;
};

// The competitive + strongly adaptive paging pipeline: a marking base chained
// through drift gates with restarted paging-MW levels (tau_u = T/2^u, shared
// Z, switching budget D = k/2). Sub-algorithms are observed only through
// realized losses and movement, so every input is 1-slow and the scaled-loss
// bound is M = D at each gate. Each gate holds a coupled selector bit; the
// emitted cache comes from the highest selected level, falling back to the
// marking base when every bit is clear.
class CompetitiveAdaptivePaging {
 public:
  CompetitiveAdaptivePaging(int num_pages, int subset_size, long horizon, double z_param,
                            std::uint64_t seed)
      : n_(num_pages), k_(subset_size), horizon_(horizon), d_(subset_size / 2.0), rng_(seed) {
    if (horizon < 2 || (horizon & (horizon - 1)) != 0)
      throw std::invalid_argument("CompetitiveAdaptivePaging: T must be a power of two");
    if (subset_size < 2) throw std::invalid_argument("CompetitiveAdaptivePaging: need k >= 2");
    base_ = std::make_unique<Marking>(num_pages, subset_size);
    long tau = horizon;
    while (tau >= 2) {
      levels_.push_back(std::make_unique<RestartingPagingMW>(num_pages, subset_size, tau, rng_));
      gates_.emplace_back(static_cast<double>(tau), z_param, d_);
      bits_.push_back(false);
      tau /= 2;
    }
    chain_cache_.assign(levels_.size() + 1, base_->cache());
  }

  struct RoundResult {
    CacheConfig cache;     // configuration used for this request
    bool miss = false;
    double movement_in = 0.0;  // movement charged entering this round
  };

  RoundResult serve(int page) {
    if (round_ >= horizon_) throw std::logic_error("CompetitiveAdaptivePaging: past horizon");
    ++round_;
    RoundResult out;
    out.cache = chain_cache_.back();
    out.miss = !out.cache.contains(page);
    out.movement_in = pending_move_;

    const double base_miss = paging_loss(base_->cache(), page);
    base_loss_ += pending_base_move_ + base_miss;
    std::vector<double> leaf_miss(levels_.size());
    for (std::size_t u = 0; u < levels_.size(); ++u)
      leaf_miss[u] = paging_loss(levels_[u]->cache(), page);
    std::vector<double> chain_miss(chain_cache_.size());
    for (std::size_t i = 0; i < chain_cache_.size(); ++i)
      chain_miss[i] = paging_loss(chain_cache_[i], page);
    combined_loss_ += pending_move_ + chain_miss.back();

    CacheConfig base_old = base_->cache();
    std::vector<CacheConfig> leaf_old;
    leaf_old.reserve(levels_.size());
    for (const auto& lvl : levels_) leaf_old.push_back(lvl->cache());

    base_->serve(page, rng_);
    for (auto& lvl : levels_) lvl->serve(page, rng_);
    pending_base_move_ = movement_cost(base_old, base_->cache());

    std::vector<CacheConfig> next_chain(chain_cache_.size(), base_->cache());
    for (std::size_t u = 0; u < levels_.size(); ++u) {
      // movement_cost already carries the halved per-page price, so the
      // scaled loss is (service + movement cost) / (M + 1) with M = D.
      const double move0 = movement_cost(chain_cache_[u], next_chain[u]);
      const double move1 = movement_cost(leaf_old[u], levels_[u]->cache());
      const double lt0 = (chain_miss[u] + move0) / (d_ + 1.0);
      const double lt1 = (leaf_miss[u] + move1) / (d_ + 1.0);
      const double g_old = gates_[u].weight();
      gates_[u].step(lt0, lt1);
      const double g_new = gates_[u].weight();
      flip_bit(u, g_old, g_new);
      next_chain[u + 1] = bits_[u] ? levels_[u]->cache() : next_chain[u];
    }
    pending_move_ = movement_cost(chain_cache_.back(), next_chain.back());
    chain_cache_ = std::move(next_chain);
    return out;
  }

  double combined_loss() const { return combined_loss_; }
  double base_loss() const { return base_loss_; }
  double switching_cost() const { return d_; }
  std::size_t num_levels() const { return levels_.size(); }
  const DriftGate& gate(std::size_t u) const { return gates_.at(u); }

 private:
  // Minimal coupling of the selector bit to the moving gate weight.
  void flip_bit(std::size_t u, double g_old, double g_new) {
    if (!bits_[u] && g_new > g_old) {
      const double p = g_old < 1.0 ? (g_new - g_old) / (1.0 - g_old) : 1.0;
      if (uniform01(rng_) < p) bits_[u] = true;
    } else if (bits_[u] && g_new < g_old) {
      const double p = g_old > 0.0 ? (g_old - g_new) / g_old : 1.0;
      if (uniform01(rng_) < p) bits_[u] = false;
    }
  }

  int n_;
  int k_;
  long horizon_;
  double d_;
  Rng rng_;
  std::unique_ptr<Marking> base_;
  std::vector<std::unique_ptr<RestartingPagingMW>> levels_;
  std::vector<DriftGate> gates_;
  std::vector<bool> bits_;
  std::vector<CacheConfig> chain_cache_;  // [0] = base, [u+1] = B_u
  long round_ = 0;
  double pending_move_ = 0.0;
  double pending_base_move_ = 0.0;
  double combined_loss_ = 0.0;
  double base_loss_ = 0.0;
};

}  // namespace olsc
