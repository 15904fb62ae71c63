#ifndef RUL_ORACLE_HPP
#define RUL_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rul/errors.hpp"
#include "rul/models.hpp"

namespace rul {

// Exact solvers for robust 1-means by subset enumeration, and the graph
// embedding that reduces n/2-clique to it. Intended as ground truth at tiny n.

inline constexpr Eigen::Index kSubsetGuard = 24;
inline constexpr Eigen::Index kCliqueGuard = 12;

struct BruteForceResult {
  std::vector<std::size_t> subset;  // ascending indices
  Eigen::VectorXd center;           // mean of the subset
  double cost = 0.0;                // sum of squared distances to the center
};

/// Sum of squared distances of the rows of `points` to their mean.
inline double sse_about_mean(const Points& points) {
  if (points.rows() < 1) throw std::domain_error("empty subset");
  const Eigen::RowVectorXd mean = points.colwise().mean();
  return (points.rowwise() - mean).rowwise().squaredNorm().sum();
}

/// L(C) = 1/(2|C|) * sum over ordered pairs ||x - y||^2; equal to sse_about_mean.
inline double pairwise_cost(const Points& points) {
  const Eigen::Index m = points.rows();
  if (m < 1) throw std::domain_error("pairwise cost of an empty subset");
  double total = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) total += (points.row(i) - points.row(j)).squaredNorm();
  return total / static_cast<double>(m);  // each unordered pair counted twice in the double sum
}

/// Minimizes L(C) over all subsets C of size h by exhaustive enumeration in
/// lexicographic order; the first minimizer wins ties.
/// Refuses n > 24 unless `allow_large` is set.
inline BruteForceResult brute_robust_1mean(const Points& points, std::size_t h, bool allow_large = false) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (h < 1 || h > n) throw std::domain_error("subset size h must satisfy 1 <= h <= n");
  if (!allow_large && points.rows() > kSubsetGuard) {
    throw GuardError("brute force refuses n=" + std::to_string(n) + " > " + std::to_string(kSubsetGuard) +
                     " (enumeration guard)");
  }
  const Eigen::Index d = points.cols();
  std::vector<std::size_t> idx(h);
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();
  Eigen::RowVectorXd mean(d);
  for (;;) {
    mean.setZero();
    for (std::size_t i : idx) mean += points.row(static_cast<Eigen::Index>(i));
    mean /= static_cast<double>(h);
    double cost = 0.0;
    for (std::size_t i : idx) cost += (points.row(static_cast<Eigen::Index>(i)) - mean).squaredNorm();
    if (cost < best.cost) {
      best.cost = cost;
      best.subset = idx;
      best.center = mean.transpose();
    }
    // next combination
    std::size_t pos = h;
    while (pos > 0 && idx[pos - 1] == n - h + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < h; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

/// Adjacency matrix of a simple undirected graph.
using Adjacency = Eigen::MatrixXi;

inline void validate_simple_graph(const Adjacency& a) {
  if (a.rows() != a.cols()) throw std::domain_error("adjacency matrix must be square");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0) throw std::domain_error("adjacency matrix must have a zero diagonal");
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0 && a(i, j) != 1) throw std::domain_error("adjacency entries must be 0 or 1");
      if (a(i, j) != a(j, i)) throw std::domain_error("adjacency matrix must be symmetric");
    }
  }
}

/// Vertex i maps to row i of A plus n on coordinate i.
inline Points clique_embedding(const Adjacency& a) {
  validate_simple_graph(a);
  const Eigen::Index n = a.rows();
  Points x = a.cast<double>();
  x.diagonal().array() += static_cast<double>(n);
  return x;
}

/// Direct check for a clique of the given size by enumerating vertex subsets.
inline bool has_clique(const Adjacency& a, std::size_t size) {
  validate_simple_graph(a);
  const auto n = static_cast<std::size_t>(a.rows());
  if (size == 0) return true;
  if (size > n) return false;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    bool clique = true;
    for (std::size_t i = 0; i < size && clique; ++i)
      for (std::size_t j = i + 1; j < size && clique; ++j)
        clique = a(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[j])) == 1;
    if (clique) return true;
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Graph on n vertices whose edges are the set bits of `mask`, in the order
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
inline Adjacency graph_from_mask(Eigen::Index n, std::uint64_t mask) {
  Adjacency a = Adjacency::Zero(n, n);
  int bit = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1u) a(i, j) = a(j, i) = 1;
  return a;
}

inline double min_half_subset_cost(const Adjacency& a) {
  return brute_robust_1mean(clique_embedding(a), static_cast<std::size_t>(a.rows() / 2)).cost;
}

/// Cost threshold c for deciding n/2-clique through robust 1-means on the
/// embedding. It is the exact boundary: the largest optimal cost over all
/// graphs on n vertices that contain an n/2-clique, found by enumerating every
/// such graph. Throws if that boundary does not separate clique from
/// clique-free graphs. Supported for n in {2, 4, 6}.
inline double derived_clique_threshold(Eigen::Index n) {
  if (n < 2 || n % 2 != 0 || n > 6) {
    throw GuardError("derived clique threshold is only enumerated for n in {2, 4, 6}, got " + std::to_string(n));
  }
  const int edges = static_cast<int>(n * (n - 1) / 2);
  double worst_yes = -std::numeric_limits<double>::infinity();
  double best_no = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges); ++mask) {
    const Adjacency a = graph_from_mask(n, mask);
    const double cost = min_half_subset_cost(a);
    if (has_clique(a, static_cast<std::size_t>(n / 2))) {
      worst_yes = std::max(worst_yes, cost);
    } else {
      best_no = std::min(best_no, cost);
    }
  }
  if (!(worst_yes < best_no)) {
    throw std::logic_error("robust 1-means costs do not separate clique graphs for n=" + std::to_string(n));
  }
  return worst_yes;
}

/// True iff some n/2-subset of the embedded graph has cost <= threshold.
inline bool decide_clique_via_1means(const Adjacency& a, double threshold, bool allow_large = false) {
  validate_simple_graph(a);
  if (a.rows() < 2 || a.rows() % 2 != 0) throw std::domain_error("clique decision needs an even number of vertices");
  if (!allow_large && a.rows() > kCliqueGuard) {
    throw GuardError("clique decision refuses n=" + std::to_string(a.rows()) + " > " + std::to_string(kCliqueGuard) +
                     " (enumeration guard)");
  }
  return brute_robust_1mean(clique_embedding(a), static_cast<std::size_t>(a.rows() / 2), allow_large).cost <= threshold;
}

}  // namespace rul

#endif  // RUL_ORACLE_HPP
