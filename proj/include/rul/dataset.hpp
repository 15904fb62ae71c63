#ifndef RUL_DATASET_HPP
#define RUL_DATASET_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rul {

enum class PointLabel { Inlier, Outlier };

/// n points in R^d (one per row) with optional inlier/outlier tags and
/// optional class names (e.g. from a CSV label column).
struct Dataset {
  Eigen::MatrixXd points;
  std::optional<std::vector<PointLabel>> labels;
  std::optional<std::vector<std::string>> classes;
  std::string meta;

  Eigen::Index size() const noexcept { return points.rows(); }
  Eigen::Index dim() const noexcept { return points.cols(); }

  void validate() const {
    if (!points.allFinite()) throw std::domain_error("dataset contains non-finite coordinates");
    if (labels && static_cast<Eigen::Index>(labels->size()) != points.rows()) {
      throw std::domain_error("label count does not match point count");
    }
    if (classes && static_cast<Eigen::Index>(classes->size()) != points.rows()) {
      throw std::domain_error("class count does not match point count");
    }
  }

  /// Rows at `indices`, in the given order, with labels and classes carried along.
  Dataset select(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.points.resize(static_cast<Eigen::Index>(indices.size()), points.cols());
    if (labels) out.labels.emplace();
    if (classes) out.classes.emplace();
    for (std::size_t r = 0; r < indices.size(); ++r) {
      const auto i = static_cast<Eigen::Index>(indices[r]);
      if (i < 0 || i >= points.rows()) throw std::out_of_range("row index out of range");
      out.points.row(static_cast<Eigen::Index>(r)) = points.row(i);
      if (labels) out.labels->push_back((*labels)[indices[r]]);
      if (classes) out.classes->push_back((*classes)[indices[r]]);
    }
    out.meta = meta;
    return out;
  }

  std::size_t count(PointLabel which) const {
    if (!labels) return 0;
    std::size_t c = 0;
    for (auto l : *labels) c += (l == which);
    return c;
  }
};

}  // namespace rul

#endif  // RUL_DATASET_HPP
