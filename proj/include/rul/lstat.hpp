#ifndef RUL_LSTAT_HPP
#define RUL_LSTAT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rul/weights.hpp"

namespace rul {

/// Per-point distortions d_S(x_i). Nonempty, finite, nonnegative.
class LossVector {
 public:
  explicit LossVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::domain_error("loss vector must be nonempty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
        throw std::domain_error("loss " + std::to_string(i) + " is negative or not finite");
      }
    }
  }
  LossVector(std::initializer_list<double> values) : LossVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  std::vector<double> sorted() const {
    std::vector<double> s = values_;
    std::sort(s.begin(), s.end());
    return s;
  }

 private:
  std::vector<double> values_;
};

/// Assignment of 1-based ranks to point indices: rank(i) = p(i) in {1..n}.
class Ranking {
 public:
  /// Throws std::domain_error unless `ranks` is a permutation of 1..n.
  explicit Ranking(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
    std::vector<char> seen(ranks_.size(), 0);
    for (std::size_t r : ranks_) {
      if (r < 1 || r > ranks_.size() || seen[r - 1]) throw std::domain_error("ranks do not form a permutation");
      seen[r - 1] = 1;
    }
  }

  static Ranking identity(std::size_t n) {
    std::vector<std::size_t> r(n);
    std::iota(r.begin(), r.end(), std::size_t{1});
    return Ranking(std::move(r));
  }

  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t operator[](std::size_t i) const { return ranks_[i]; }
  std::span<const std::size_t> ranks() const noexcept { return ranks_; }

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::size_t> ranks_;
};

/// Stable ascending ranking: ties are broken by original index.
inline Ranking rank_losses(const LossVector& losses) {
  const std::size_t n = losses.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return losses[a] < losses[b]; });
  std::vector<std::size_t> ranks(n);
  for (std::size_t pos = 0; pos < n; ++pos) ranks[order[pos]] = pos + 1;
  return Ranking(std::move(ranks));
}

/// W(p(i)/n) for every point i.
inline std::vector<double> rank_weights(const WeightFunction& w, const Ranking& p) {
  const double n = static_cast<double>(p.size());
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = w(static_cast<double>(p[i]) / n);
  return out;
}

namespace detail {

// (1/n) sum_i weight_i * loss_i, accumulated so that the result only depends on
// the multiset of weights attached to each distinct loss value: groups of equal
// losses are visited in ascending order and their weights summed in descending
// order. Swapping weights inside a tie group therefore leaves the result
// bit-identical.
inline double weighted_loss_sum(std::span<const double> losses, std::span<const double> weights) {
  const std::size_t n = losses.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (losses[a] != losses[b]) return losses[a] < losses[b];
    return weights[a] > weights[b];
  });
  double total = 0.0;
  std::size_t pos = 0;
  while (pos < n) {
    const double value = losses[order[pos]];
    double group_weight = 0.0;
    for (; pos < n && losses[order[pos]] == value; ++pos) group_weight += weights[order[pos]];
    total += group_weight * value;
  }
  return total / static_cast<double>(n);
}

inline std::size_t quantile_count(std::size_t n, double zeta) {
  const double nd = static_cast<double>(n);
  auto i = static_cast<std::size_t>(std::clamp(std::ceil(zeta * nd), 1.0, nd));
  while (i > 1 && static_cast<double>(i - 1) / nd >= zeta) --i;
  while (i < n && static_cast<double>(i) / nd < zeta) ++i;
  return i;
}

}  // namespace detail

/// phi_S(x, p) = (1/n) sum_i W(p(i)/n) d_S(x_i).
inline double phi_perm(const LossVector& losses, const WeightFunction& w, const Ranking& p) {
  if (p.size() != losses.size()) {
    throw std::domain_error("ranking length " + std::to_string(p.size()) + " does not match " +
                            std::to_string(losses.size()) + " losses");
  }
  const auto weights = rank_weights(w, p);
  return detail::weighted_loss_sum(losses.values(), weights);
}

/// The empirical L-statistic (1/n) sum_i d_(i) W(i/n).
///
/// For a hard threshold with non-integer zeta*n the effective retained
/// fraction is floor(zeta*n)/n; no interpolation is applied.
inline double lstat_objective(const LossVector& losses, const WeightFunction& w) {
  return phi_perm(losses, w, rank_losses(losses));
}

/// Left-continuous generalized inverse of the empirical CDF: the smallest
/// loss r with #{i : loss_i <= r} / n >= zeta.
inline double empirical_quantile(const LossVector& losses, double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::domain_error("quantile level must lie in (0,1], got " + std::to_string(zeta));
  }
  const auto sorted = losses.sorted();
  return sorted[detail::quantile_count(sorted.size(), zeta) - 1];
}

/// Value of the hard-threshold objective through its variational form
///   sup_lambda { lambda - zeta^{-1} (1/n) sum_i max(lambda - t_i, 0) }.
/// The objective is concave and piecewise linear in lambda with kinks at the
/// losses, so the supremum is attained at one of them.
inline double variational_hard(const LossVector& losses, double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0)) {
    throw std::domain_error("variational form requires zeta in (0,1], got " + std::to_string(zeta));
  }
  const auto sorted = losses.sorted();
  const double n = static_cast<double>(sorted.size());
  double best = -INFINITY;
  double prefix = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    if (j + 1 < sorted.size() && sorted[j + 1] == sorted[j]) continue;
    const double lambda = sorted[j];
    const double below = static_cast<double>(j + 1) * lambda - prefix;
    best = std::max(best, lambda - below / (zeta * n));
  }
  return best;
}

}  // namespace rul

#endif  // RUL_LSTAT_HPP
