#ifndef RUL_MODELS_HPP
#define RUL_MODELS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rul/eigen_sym.hpp"
#include "rul/lstat.hpp"
#include "rul/weights.hpp"

namespace rul {

/// Data matrices store one point per row (n x d).
using Points = Eigen::MatrixXd;
using Point = Eigen::VectorXd;

/// k centers in R^d, one per row.
struct CenterSet {
  Eigen::MatrixXd centers;

  Eigen::Index k() const noexcept { return centers.rows(); }
  Eigen::Index dim() const noexcept { return centers.cols(); }

  void validate() const {
    if (centers.rows() < 1) throw std::domain_error("center set needs at least one center");
    if (!centers.allFinite()) throw std::domain_error("center coordinates must be finite");
  }
};

/// A k-dimensional linear subspace of R^d given by a d x k column-orthonormal basis.
struct Subspace {
  Eigen::MatrixXd basis;

  Eigen::Index k() const noexcept { return basis.cols(); }
  Eigen::Index dim() const noexcept { return basis.rows(); }

  double orthonormality_error() const {
    const Eigen::MatrixXd gram = basis.transpose() * basis;
    return (gram - Eigen::MatrixXd::Identity(k(), k())).norm();
  }

  void validate() const {
    if (k() < 1 || k() > dim()) throw std::domain_error("subspace dimension must satisfy 1 <= k <= d");
    if (!basis.allFinite() || orthonormality_error() > 1e-8) {
      throw std::domain_error("subspace basis is not column-orthonormal");
    }
  }
};

using Model = std::variant<CenterSet, Subspace>;

inline Eigen::Index model_dim(const Model& m) {
  return std::visit([](const auto& s) { return s.dim(); }, m);
}

struct NearestCenter {
  double distance;  // squared Euclidean
  Eigen::Index index;
};

/// Squared distance to the nearest center; ties resolve to the lowest index.
inline NearestCenter kmeans_distortion(const Eigen::Ref<const Eigen::VectorXd>& x, const CenterSet& s) {
  if (x.size() != s.dim()) {
    throw std::domain_error("point has dimension " + std::to_string(x.size()) + ", centers have " +
                            std::to_string(s.dim()));
  }
  NearestCenter best{std::numeric_limits<double>::infinity(), 0};
  for (Eigen::Index c = 0; c < s.k(); ++c) {
    const double dist = (s.centers.row(c).transpose() - x).squaredNorm();
    if (dist < best.distance) best = {dist, c};
  }
  return best;
}

/// ||x - U U^T x||^2, computed as ||x||^2 - ||U^T x||^2 and clamped at zero.
/// Absolute error is at most about 4 eps ||x||^2.
inline double psa_distortion(const Eigen::Ref<const Eigen::VectorXd>& x, const Subspace& s) {
  if (x.size() != s.dim()) {
    throw std::domain_error("point has dimension " + std::to_string(x.size()) + ", subspace lives in R^" +
                            std::to_string(s.dim()));
  }
  const double residual = x.squaredNorm() - (s.basis.transpose() * x).squaredNorm();
  return residual > 0.0 ? residual : 0.0;
}

inline double distortion(const Eigen::Ref<const Eigen::VectorXd>& x, const Model& m) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenterSet>) {
          return kmeans_distortion(x, s).distance;
        } else {
          return psa_distortion(x, s);
        }
      },
      m);
}

/// d_S(x_i) for every row of `points`, in index order.
inline LossVector distortions(const Points& points, const Model& m) {
  if (points.rows() < 1) throw std::domain_error("no points to evaluate");
  if (points.cols() != model_dim(m)) {
    throw std::domain_error("data dimension " + std::to_string(points.cols()) + " does not match model dimension " +
                            std::to_string(model_dim(m)));
  }
  std::vector<double> out(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) out[static_cast<std::size_t>(i)] = distortion(points.row(i).transpose(), m);
  return LossVector(std::move(out));
}

/// Weighted Lloyd step for a fixed ranking p: assign every point to its
/// nearest center, then move each center to the W(p(i)/n)-weighted mean of
/// its cluster. Clusters with zero total weight keep their center.
inline CenterSet kmeans_oracle(const Points& points, const CenterSet& s, const Ranking& p, const WeightFunction& w) {
  s.validate();
  if (points.cols() != s.dim()) throw std::domain_error("data and center dimensions differ");
  if (static_cast<Eigen::Index>(p.size()) != points.rows()) throw std::domain_error("ranking length does not match data");

  const auto weights = rank_weights(w, p);
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(s.k(), s.dim());
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(s.k());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double wi = weights[static_cast<std::size_t>(i)];
    const auto nearest = kmeans_distortion(points.row(i).transpose(), s);
    if (wi == 0.0) continue;
    sums.row(nearest.index) += wi * points.row(i);
    mass(nearest.index) += wi;
  }
  CenterSet next = s;
  for (Eigen::Index c = 0; c < s.k(); ++c) {
    if (mass(c) > 0.0) next.centers.row(c) = sums.row(c) / mass(c);
  }
  return next;
}

/// sum_i W(p(i)/n) x_i x_i^T (uncentered).
inline Eigen::MatrixXd weighted_second_moment(const Points& points, const Ranking& p, const WeightFunction& w) {
  if (static_cast<Eigen::Index>(p.size()) != points.rows()) throw std::domain_error("ranking length does not match data");
  const auto weights = rank_weights(w, p);
  const Eigen::Map<const Eigen::VectorXd> wv(weights.data(), static_cast<Eigen::Index>(weights.size()));
  Eigen::MatrixXd m = points.transpose() * wv.asDiagonal() * points;
  return 0.5 * (m + m.transpose());
}

/// Top-k eigenvectors of the weighted second-moment matrix, stacked as columns.
inline Subspace psa_oracle(const Points& points, const Ranking& p, const WeightFunction& w, Eigen::Index k) {
  if (k < 1 || k > points.cols()) throw std::domain_error("psa dimension k must satisfy 1 <= k <= d");
  const auto eig = sym_eig_topk(weighted_second_moment(points, p, w), k);
  return Subspace{eig.vectors};
}

}  // namespace rul

#endif  // RUL_MODELS_HPP
