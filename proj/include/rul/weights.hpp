#ifndef RUL_WEIGHTS_HPP
#define RUL_WEIGHTS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rul {

enum class WeightKind { HardThreshold, Identity, PiecewiseLinear };

inline const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::HardThreshold: return "hard";
    case WeightKind::Identity: return "identity";
    case WeightKind::PiecewiseLinear: return "piecewise";
  }
  return "?";
}

/// A non-increasing, nonnegative weight profile on [0,1] used to reweight
/// ranked losses.
///
/// Three families are supported:
///   - hard threshold: W(t) = 1/zeta on the closed interval [0, zeta], 0 after;
///   - identity: W(t) = 1 (zeta = 1);
///   - piecewise linear through sorted knots (t, w), constant after the last knot.
///
/// For every kind `zeta()` is the cutoff mass: W vanishes on (zeta, 1].
class WeightFunction {
 public:
  using Knot = std::pair<double, double>;

  static WeightFunction hard(double zeta) {
    if (!(zeta > 0.0 && zeta <= 1.0)) {
      throw std::domain_error("hard threshold requires zeta in (0,1], got " + std::to_string(zeta));
    }
    WeightFunction w;
    w.kind_ = WeightKind::HardThreshold;
    w.zeta_ = zeta;
    return w;
  }

  static WeightFunction identity() { return WeightFunction{}; }

  /// Knots must be sorted by strictly increasing t in [0,1], start at t = 0,
  /// have nonnegative weights that never increase, and W(0) > 0.
  static WeightFunction piecewise(std::vector<Knot> knots) {
    if (knots.empty()) throw std::domain_error("piecewise weight needs at least one knot");
    if (knots.front().first != 0.0) throw std::domain_error("piecewise weight: first knot must be at t = 0");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const auto [t, v] = knots[i];
      if (!std::isfinite(t) || !std::isfinite(v) || t < 0.0 || t > 1.0) {
        throw std::domain_error("piecewise weight: knot " + std::to_string(i) + " outside [0,1] or not finite");
      }
      if (v < 0.0) throw std::domain_error("piecewise weight: negative weight at knot " + std::to_string(i));
      if (i > 0) {
        if (!(t > knots[i - 1].first)) {
          throw std::domain_error("piecewise weight: knots must have strictly increasing t");
        }
        if (v > knots[i - 1].second) {
          throw std::domain_error("piecewise weight: increasing segment before knot " + std::to_string(i));
        }
      }
    }
    if (!(knots.front().second > 0.0)) throw std::domain_error("piecewise weight: W(0) must be positive");

    WeightFunction w;
    w.kind_ = WeightKind::PiecewiseLinear;
    w.knots_ = std::move(knots);
    w.zeta_ = 1.0;
    for (const auto& [t, v] : w.knots_) {
      if (v == 0.0) {
        w.zeta_ = t;
        break;
      }
    }
    return w;
  }

  WeightKind kind() const noexcept { return kind_; }
  double zeta() const noexcept { return zeta_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  /// W(t). Throws std::domain_error outside [0,1].
  double operator()(double t) const {
    check_fraction(t);
    return eval(t);
  }

  /// K_W(t) = integral of W over [0, t], closed form per kind.
  double cumulative(double t) const {
    check_fraction(t);
    switch (kind_) {
      case WeightKind::Identity: return t;
      case WeightKind::HardThreshold: return std::min(t, zeta_) / zeta_;
      case WeightKind::PiecewiseLinear: break;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const auto [t0, w0] = knots_[i];
      const auto [t1, w1] = knots_[i + 1];
      if (t <= t0) return acc;
      const double hi = std::min(t, t1);
      const double w_hi = w0 + (w1 - w0) * (hi - t0) / (t1 - t0);
      acc += 0.5 * (w0 + w_hi) * (hi - t0);
      if (t <= t1) return acc;
    }
    const auto [tl, wl] = knots_.back();
    if (t > tl) acc += wl * (t - tl);
    return acc;
  }

  /// Lipschitz constant; infinite for the hard threshold.
  double lipschitz() const {
    switch (kind_) {
      case WeightKind::Identity: return 0.0;
      case WeightKind::HardThreshold: return zeta_ < 1.0 ? INFINITY : 0.0;
      case WeightKind::PiecewiseLinear: break;
    }
    double lip = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double slope = (knots_[i].second - knots_[i + 1].second) / (knots_[i + 1].first - knots_[i].first);
      lip = std::max(lip, slope);
    }
    return lip;
  }

  std::string describe() const {
    switch (kind_) {
      case WeightKind::Identity: return "identity";
      case WeightKind::HardThreshold: return "hard(zeta=" + std::to_string(zeta_) + ")";
      case WeightKind::PiecewiseLinear: return "piecewise(" + std::to_string(knots_.size()) + " knots)";
    }
    return "?";
  }

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  WeightFunction() = default;

  static void check_fraction(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::domain_error("weight argument must lie in [0,1], got " + std::to_string(t));
    }
  }

  double eval(double t) const {
    switch (kind_) {
      case WeightKind::Identity: return 1.0;
      case WeightKind::HardThreshold: return t <= zeta_ ? 1.0 / zeta_ : 0.0;
      case WeightKind::PiecewiseLinear: break;
    }
    if (t >= knots_.back().first) return knots_.back().second;
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const Knot& k) { return v < k.first; });
    auto lo = std::prev(hi);
    const double frac = (t - lo->first) / (hi->first - lo->first);
    return lo->second + (hi->second - lo->second) * frac;
  }

  WeightKind kind_ = WeightKind::Identity;
  double zeta_ = 1.0;
  std::vector<Knot> knots_;
};

inline double weight_at(const WeightFunction& w, double t) { return w(t); }

inline double cumulative_kw(const WeightFunction& w, double t) { return w.cumulative(t); }

}  // namespace rul

#endif  // RUL_WEIGHTS_HPP
