#ifndef RUL_INFLUENCE_HPP
#define RUL_INFLUENCE_HPP

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rul/lstat.hpp"
#include "rul/weights.hpp"

namespace rul {

/// Upper bound on the influence function of the weighted functional,
///   IF_max = integral over [0, F^{-1}(zeta)] of W(F(r)) F(r) dr,
/// for the empirical loss distribution. The CDF is a step function, so the
/// integral is an exact sum over the gaps between sorted distinct losses.
inline double if_max(const WeightFunction& w, const LossVector& losses) {
  const auto sorted = losses.sorted();
  const double upper = empirical_quantile(losses, w.zeta());
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  std::size_t j = 0;
  while (j < sorted.size()) {
    const double value = sorted[j];
    if (value >= upper) break;
    while (j < sorted.size() && sorted[j] == value) ++j;
    const double cdf = static_cast<double>(j) / n;
    const double next = std::min(sorted[j], upper);
    total += w(cdf) * cdf * (next - value);
  }
  return total;
}

/// A finitely supported probability measure on [0, inf): atoms with masses
/// summing to one. Used to evaluate functionals along contamination paths.
struct DiscreteMeasure {
  std::vector<double> atoms;
  std::vector<double> masses;

  static DiscreteMeasure empirical(const LossVector& losses) {
    DiscreteMeasure m;
    m.atoms.assign(losses.values().begin(), losses.values().end());
    m.masses.assign(losses.size(), 1.0 / static_cast<double>(losses.size()));
    return m;
  }

  /// (1 - t) * this + t * delta_r
  DiscreteMeasure contaminate(double r, double t) const {
    DiscreteMeasure m = *this;
    for (double& mass : m.masses) mass *= (1.0 - t);
    m.atoms.push_back(r);
    m.masses.push_back(t);
    return m;
  }
};

/// Hard-threshold functional of a discrete measure: the lower-tail mean
///   zeta^{-1} * integral_0^zeta F^{-1}(u) du,
/// which splits the quantile atom when zeta falls inside its CDF jump.
/// On an empirical measure with zeta*n integer it equals lstat_objective.
inline double hard_functional(const DiscreteMeasure& rho, double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0)) throw std::domain_error("zeta must lie in (0,1]");
  if (rho.atoms.empty() || rho.atoms.size() != rho.masses.size()) {
    throw std::domain_error("discrete measure needs matching, nonempty atoms and masses");
  }
  std::vector<std::size_t> order(rho.atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rho.atoms[a] < rho.atoms[b]; });
  double remaining = zeta;
  double acc = 0.0;
  for (std::size_t idx : order) {
    const double take = std::min(remaining, rho.masses[idx]);
    acc += take * rho.atoms[idx];
    remaining -= take;
    if (remaining <= 0.0) break;
  }
  return acc / zeta;
}

/// Influence of a point mass at loss `r` on the hard-threshold functional
/// with cutoff zeta, evaluated on the empirical distribution of `losses`:
///   zeta^{-1}(r + (zeta - 1) q) - Phi   if r <= q,
///   q - Phi                              otherwise,
/// with q = F^{-1}(zeta). The closed form is exact for non-atomic
/// distributions; on empirical ones it is the derivative along the
/// contamination path whenever zeta*n is not an integer and r != q.
inline double influence_hard(double r, const LossVector& losses, double zeta) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::domain_error("influence_hard requires zeta in (0,1), got " + std::to_string(zeta));
  }
  if (!(r >= 0.0)) throw std::domain_error("contamination point must be a nonnegative loss");
  const double q = empirical_quantile(losses, zeta);
  const double phi = hard_functional(DiscreteMeasure::empirical(losses), zeta);
  if (r <= q) return (r + (zeta - 1.0) * q) / zeta - phi;
  return q - phi;
}

}  // namespace rul

#endif  // RUL_INFLUENCE_HPP
