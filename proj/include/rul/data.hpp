#ifndef RUL_DATA_HPP
#define RUL_DATA_HPP

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rul/dataset.hpp"
#include "rul/errors.hpp"
#include "rul/rng.hpp"

namespace rul {

// ---------------------------------------------------------------------------
// Synthetic generators

/// Axis-aligned Gaussian component truncated to a Mahalanobis ball.
struct GaussianComponent {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  // per axis, > 0
  std::size_t count = 0;
};

struct MixtureSpec {
  std::vector<GaussianComponent> inliers;
  std::vector<GaussianComponent> outliers;
  double truncation = 3.0;  // radius in standard deviations

  void validate() const {
    Eigen::Index dim = -1;
    auto check = [&](const std::vector<GaussianComponent>& comps, const std::string& group) {
      for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& g = comps[c];
        const std::string path = group + "[" + std::to_string(c) + "]";
        if (g.mean.size() == 0) throw ConfigError(path + ".mean", "must be nonempty");
        if (dim < 0) dim = g.mean.size();
        if (g.mean.size() != dim) throw ConfigError(path + ".mean", "dimension differs from other components");
        if (g.variance.size() != dim) throw ConfigError(path + ".variance", "needs one entry per axis");
        if (!g.mean.allFinite()) throw ConfigError(path + ".mean", "must be finite");
        if (!((g.variance.array() > 0.0).all() && g.variance.allFinite())) {
          throw ConfigError(path + ".variance", "must be > 0");
        }
      }
    };
    check(inliers, "inliers");
    check(outliers, "outliers");
    if (dim < 0) throw ConfigError("inliers", "mixture needs at least one component");
    if (!(truncation > 0.0)) throw ConfigError("truncation", "must be > 0");
  }

  Eigen::Index dim() const { return inliers.empty() ? outliers.front().mean.size() : inliers.front().mean.size(); }

  std::size_t total(const std::vector<GaussianComponent>& comps) const {
    std::size_t n = 0;
    for (const auto& c : comps) n += c.count;
    return n;
  }
};

inline GaussianComponent isotropic(std::initializer_list<double> mean, double variance, std::size_t count) {
  GaussianComponent g;
  g.mean = Eigen::Map<const Eigen::VectorXd>(mean.begin(), static_cast<Eigen::Index>(mean.size()));
  g.variance = Eigen::VectorXd::Constant(g.mean.size(), variance);
  g.count = count;
  return g;
}

/// Three planar clusters of 100 points (variance 0.1 at (-3,0), (0,1), (3,0))
/// plus 100 outliers around (-1,-5) with variance 5.
inline MixtureSpec three_cluster_spec(bool with_outliers = true) {
  MixtureSpec spec;
  spec.inliers = {isotropic({-3.0, 0.0}, 0.1, 100), isotropic({0.0, 1.0}, 0.1, 100), isotropic({3.0, 0.0}, 0.1, 100)};
  if (with_outliers) spec.outliers = {isotropic({-1.0, -5.0}, 5.0, 100)};
  return spec;
}

namespace detail {

inline void draw_component(const GaussianComponent& g, double truncation, Rng& rng, Eigen::MatrixXd& out,
                           Eigen::Index& row) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::VectorXd sigma = g.variance.cwiseSqrt();
  Eigen::VectorXd z(g.mean.size());
  for (std::size_t i = 0; i < g.count; ++i) {
    do {
      for (Eigen::Index a = 0; a < z.size(); ++a) z(a) = normal(rng);
    } while (z.norm() > truncation);
    out.row(row++) = (g.mean + sigma.cwiseProduct(z)).transpose();
  }
}

}  // namespace detail

/// Inlier components first, then outlier components, each in spec order.
inline Dataset gen_clusters_with_outliers(const MixtureSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::size_t n_in = spec.total(spec.inliers);
  const std::size_t n_out = spec.total(spec.outliers);
  Dataset data;
  data.points.resize(static_cast<Eigen::Index>(n_in + n_out), spec.dim());
  data.labels.emplace();
  Rng rng = substream(seed, 0);
  Eigen::Index row = 0;
  for (const auto& g : spec.inliers) detail::draw_component(g, spec.truncation, rng, data.points, row);
  for (const auto& g : spec.outliers) detail::draw_component(g, spec.truncation, rng, data.points, row);
  data.labels->assign(n_in, PointLabel::Inlier);
  data.labels->insert(data.labels->end(), n_out, PointLabel::Outlier);
  data.meta = "clusters seed=" + std::to_string(seed);
  return data;
}

/// 50 inliers uniform on [-1,1] x [-0.1,0.1] and 50 outliers uniform on the
/// part of the unit disk lying in the open first or third quadrant.
inline Dataset gen_psa_strip(std::uint64_t seed, std::size_t n_inliers = 50, std::size_t n_outliers = 50) {
  Dataset data;
  data.points.resize(static_cast<Eigen::Index>(n_inliers + n_outliers), 2);
  data.labels.emplace();
  Rng rng = substream(seed, 0);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> uy(-0.1, 0.1);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n_inliers; ++i) {
    data.points(row, 0) = ux(rng);
    data.points(row, 1) = uy(rng);
    ++row;
  }
  for (std::size_t i = 0; i < n_outliers; ++i) {
    double x, y;
    do {
      x = ux(rng);
      y = ux(rng);
    } while (!(x * y > 0.0 && x * x + y * y <= 1.0));
    data.points(row, 0) = x;
    data.points(row, 1) = y;
    ++row;
  }
  data.labels->assign(n_inliers, PointLabel::Inlier);
  data.labels->insert(data.labels->end(), n_outliers, PointLabel::Outlier);
  data.meta = "psa-strip seed=" + std::to_string(seed);
  return data;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvOptions {
  bool has_header = false;
  bool has_label = false;  // last column holds a class name
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline double parse_number(const std::string& cell, std::size_t line, std::size_t column) {
  if (cell.empty()) throw ParseError("empty cell in column " + std::to_string(column + 1), line);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("non-numeric cell '" + cell + "' in column " + std::to_string(column + 1), line);
  }
  return v;
}

}  // namespace detail

/// Rectangular numeric CSV. Class labels from the trailing column are kept as
/// strings; when every label is "inlier" or "outlier" the inlier tags are set too.
inline Dataset read_csv(std::istream& in, const CsvOptions& opt = {}) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> classes;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = opt.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto cells = detail::split_csv_line(line);
    if (width == 0) {
      width = cells.size();
      if (width < (opt.has_label ? 2u : 1u)) throw ParseError("row has no feature columns", line_no);
    } else if (cells.size() != width) {
      throw ParseError("ragged row: expected " + std::to_string(width) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    const std::size_t features = opt.has_label ? width - 1 : width;
    std::vector<double> row(features);
    for (std::size_t c = 0; c < features; ++c) row[c] = detail::parse_number(cells[c], line_no, c);
    if (opt.has_label) classes.push_back(cells.back());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows");

  Dataset data;
  data.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      data.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  if (opt.has_label) {
    const bool tagged = std::all_of(classes.begin(), classes.end(),
                                    [](const std::string& s) { return s == "inlier" || s == "outlier"; });
    if (tagged) {
      data.labels.emplace();
      for (const auto& s : classes) data.labels->push_back(s == "inlier" ? PointLabel::Inlier : PointLabel::Outlier);
    }
    data.classes = std::move(classes);
  }
  return data;
}

inline Dataset load_csv(const std::string& path, const CsvOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  Dataset data = read_csv(in, opt);
  data.meta = path;
  return data;
}

/// Header x0..x{d-1}, then a label column when the dataset has classes or
/// inlier tags. Numbers are written with 17 significant digits so a reload
/// reproduces them exactly.
inline void write_csv(std::ostream& out, const Dataset& data) {
  const bool labelled = data.classes.has_value() || data.labels.has_value();
  for (Eigen::Index c = 0; c < data.dim(); ++c) out << (c ? "," : "") << 'x' << c;
  if (labelled) out << ",label";
  out << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index r = 0; r < data.size(); ++r) {
    for (Eigen::Index c = 0; c < data.dim(); ++c) out << (c ? "," : "") << data.points(r, c);
    if (data.classes) {
      out << ',' << (*data.classes)[static_cast<std::size_t>(r)];
    } else if (data.labels) {
      out << ',' << ((*data.labels)[static_cast<std::size_t>(r)] == PointLabel::Inlier ? "inlier" : "outlier");
    }
    out << '\n';
  }
}

inline void save_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write_csv(out, data);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

// ---------------------------------------------------------------------------
// Train/test protocol on labelled real data

struct Split {
  Dataset train;
  Dataset test;
};

/// Draws n_in points (without replacement) from every inlier class and n_out
/// from every other class for training; the test set is the remaining points
/// of the inlier classes. Classes are visited in order of first appearance.
inline Split subsample_protocol(const Dataset& data, const std::vector<std::string>& inlier_classes,
                                std::size_t n_in_per_class, std::size_t n_out_per_class, std::uint64_t seed) {
  if (!data.classes) throw std::domain_error("subsampling needs class labels");
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < data.classes->size(); ++i) {
    const auto& c = (*data.classes)[i];
    if (!members.count(c)) order.push_back(c);
    members[c].push_back(i);
  }
  const std::set<std::string> inlier_set(inlier_classes.begin(), inlier_classes.end());
  for (const auto& c : inlier_set) {
    if (!members.count(c)) throw std::domain_error("inlier class '" + c + "' not present in data");
  }

  Rng rng = substream(seed, 0);
  std::vector<std::size_t> train_idx, test_idx;
  std::vector<PointLabel> train_labels;
  for (const auto& c : order) {
    auto idx = members[c];
    const bool inlier = inlier_set.count(c) > 0;
    const std::size_t want = inlier ? n_in_per_class : n_out_per_class;
    if (want > idx.size()) {
      throw std::domain_error("class '" + c + "' has " + std::to_string(idx.size()) + " points, " +
                              std::to_string(want) + " requested");
    }
    for (std::size_t i = 0; i < want; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    for (std::size_t i = 0; i < want; ++i) {
      train_idx.push_back(idx[i]);
      train_labels.push_back(inlier ? PointLabel::Inlier : PointLabel::Outlier);
    }
    if (inlier) {
      std::vector<std::size_t> rest(idx.begin() + static_cast<std::ptrdiff_t>(want), idx.end());
      std::sort(rest.begin(), rest.end());
      test_idx.insert(test_idx.end(), rest.begin(), rest.end());
    }
  }
  Split s{data.select(train_idx), data.select(test_idx)};
  s.train.labels = std::move(train_labels);
  s.test.labels = std::vector<PointLabel>(test_idx.size(), PointLabel::Inlier);
  return s;
}

}  // namespace rul

#endif  // RUL_DATA_HPP
