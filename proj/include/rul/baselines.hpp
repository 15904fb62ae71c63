#ifndef RUL_BASELINES_HPP
#define RUL_BASELINES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rul/dataset.hpp"
#include "rul/rng.hpp"
#include "rul/solver.hpp"

namespace rul {

/// Spherical depth scoring. Exact mode checks all C(n,2) pairs per point;
/// randomized mode checks M uniformly drawn pairs per point.
struct DepthMode {
  enum class Kind { Exact, Randomized } kind = Kind::Exact;
  std::size_t samples = 4000;  // M, randomized only
  std::uint64_t seed = 0;

  static DepthMode exact() { return {}; }
  static DepthMode randomized(std::size_t m, std::uint64_t seed) { return {Kind::Randomized, m, seed}; }
};

/// z lies in the closed ball with diameter [a, b] iff (a - z).(b - z) <= 0.
inline bool in_diameter_ball(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b,
                             const Eigen::Ref<const Eigen::RowVectorXd>& z) {
  return (a - z).dot(b - z) <= 0.0;
}

/// Per-point count of data-pair diameter balls containing the point. Pairs
/// that include the point itself always count.
inline std::vector<double> spherical_depth_scores(const Points& x, const DepthMode& mode = DepthMode::exact()) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw std::domain_error("spherical depth needs at least two points");
  std::vector<double> scores(static_cast<std::size_t>(n), 0.0);
  if (mode.kind == DepthMode::Kind::Exact) {
    for (Eigen::Index z = 0; z < n; ++z) {
      std::size_t count = 0;
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) count += in_diameter_ball(x.row(a), x.row(b), x.row(z));
      scores[static_cast<std::size_t>(z)] = static_cast<double>(count);
    }
    return scores;
  }
  if (mode.samples < 1) throw std::domain_error("randomized spherical depth needs M >= 1");
  for (Eigen::Index z = 0; z < n; ++z) {
    Rng rng = substream(mode.seed, static_cast<std::uint64_t>(z));
    std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
    std::uniform_int_distribution<Eigen::Index> second(0, n - 2);
    std::size_t count = 0;
    for (std::size_t m = 0; m < mode.samples; ++m) {
      const Eigen::Index a = first(rng);
      Eigen::Index b = second(rng);
      if (b >= a) ++b;
      count += in_diameter_ball(x.row(a), x.row(b), x.row(z));
    }
    scores[static_cast<std::size_t>(z)] = static_cast<double>(count);
  }
  return scores;
}

/// Number of points kept at cutoff zeta: ceil(zeta * n), guarded against
/// round-off pushing an exact product over an integer.
inline std::size_t retained_count(std::size_t n, double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0)) throw std::domain_error("depth filter needs zeta in (0,1]");
  const double target = zeta * static_cast<double>(n);
  auto keep = static_cast<std::size_t>(std::ceil(target - 1e-9 * std::max(1.0, target)));
  return std::clamp<std::size_t>(keep, 1, n);
}

/// Indices of the ceil(zeta n) highest-scoring points (earlier index wins
/// ties), returned in ascending index order.
inline std::vector<std::size_t> depth_filter_indices(const std::vector<double>& scores, double zeta) {
  const std::size_t keep = retained_count(scores.size(), zeta);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

inline Dataset depth_filter(const Dataset& data, const std::vector<double>& scores, double zeta) {
  if (static_cast<Eigen::Index>(scores.size()) != data.size()) throw std::domain_error("scores not aligned with data");
  return data.select(depth_filter_indices(scores, zeta));
}

/// Spherical-depth filtering followed by the plain (identity-weight) solver
/// on the retained points. `cfg.weight` is ignored.
inline FitResult sd_pipeline(const Dataset& data, double zeta, const FitConfig& cfg,
                             const DepthMode& mode = DepthMode::exact()) {
  Dataset kept = data;
  if (zeta < 1.0) kept = depth_filter(data, spherical_depth_scores(data.points, mode), zeta);
  FitConfig plain = cfg;
  plain.weight = WeightFunction::identity();
  return fit(kept, plain);
}

}  // namespace rul

#endif  // RUL_BASELINES_HPP
