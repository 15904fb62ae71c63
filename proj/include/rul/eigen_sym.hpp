#ifndef RUL_EIGEN_SYM_HPP
#define RUL_EIGEN_SYM_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rul {

struct EigenPairs {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, orthonormal
  int sweeps = 0;
};

namespace detail {

inline double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace detail

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Stops once the off-diagonal Frobenius norm drops below 1e-12 * ||M||_F or
/// after `max_sweeps` sweeps.
inline EigenPairs jacobi_eigen(const Eigen::MatrixXd& m, int max_sweeps = 100) {
  if (m.rows() != m.cols()) throw std::domain_error("eigensolver needs a square matrix");
  const Eigen::Index d = m.rows();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::domain_error("eigensolver needs a symmetric matrix");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);
  const double target = 1e-12 * a.norm();

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= target) break;
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p,q); t is the smaller root.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  EigenPairs out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  out.sweeps = sweep;
  for (Eigen::Index j = 0; j < d; ++j) {
    out.values(j) = a(order[j], order[j]);
    out.vectors.col(j) = v.col(order[j]);
  }
  return out;
}

/// Top-k eigenpairs of a symmetric matrix, eigenvalues descending.
inline EigenPairs sym_eig_topk(const Eigen::MatrixXd& m, Eigen::Index k) {
  if (k < 1 || k > m.rows()) {
    throw std::domain_error("requested " + std::to_string(k) + " eigenpairs of a " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + " matrix");
  }
  EigenPairs full = jacobi_eigen(m);
  full.values.conservativeResize(k);
  full.vectors.conservativeResize(Eigen::NoChange, k);
  return full;
}

}  // namespace rul

#endif  // RUL_EIGEN_SYM_HPP
