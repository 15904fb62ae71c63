#ifndef RUL_IO_HPP
#define RUL_IO_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rul/data.hpp"
#include "rul/errors.hpp"
#include "rul/eval.hpp"
#include "rul/models.hpp"
#include "rul/oracle.hpp"
#include "rul/solver.hpp"
#include "rul/weights.hpp"

namespace rul {

using json = nlohmann::json;

namespace detail {

inline std::string join_path(const std::string& base, const std::string& field) {
  return base.empty() ? field : base + "." + field;
}

template <class T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path, "has the wrong type");
  }
}

inline double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "must be a number");
  return j.get<double>();
}

inline std::vector<double> get_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "must be an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

/// Rows of equal length as a matrix (one inner array per row).
inline Eigen::MatrixXd get_rows(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "must be a nonempty array of arrays");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(get_vector(j[i], path + "[" + std::to_string(i) + "]"));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw ConfigError(path + "[" + std::to_string(r) + "]", "ragged row");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

inline json matrix_rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Weight functions: {"kind":"hard","zeta":0.5}, {"kind":"identity"},
// {"kind":"piecewise","knots":[[0.0,2.0],[0.5,0.0]]}

inline json weight_to_json(const WeightFunction& w) {
  switch (w.kind()) {
    case WeightKind::Identity: return {{"kind", "identity"}};
    case WeightKind::HardThreshold: return {{"kind", "hard"}, {"zeta", w.zeta()}};
    case WeightKind::PiecewiseLinear: {
      json knots = json::array();
      for (const auto& [t, v] : w.knots()) knots.push_back({t, v});
      return {{"kind", "piecewise"}, {"knots", knots}};
    }
  }
  return {};
}

inline WeightFunction weight_from_json(const json& j, const std::string& path = "weight") {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(path, "must be an object with a \"kind\" field");
  const auto kind = detail::get_as<std::string>(j["kind"], detail::join_path(path, "kind"));
  try {
    if (kind == "identity") return WeightFunction::identity();
    if (kind == "hard") {
      if (!j.contains("zeta")) throw ConfigError(detail::join_path(path, "zeta"), "is required for a hard threshold");
      return WeightFunction::hard(detail::get_number(j["zeta"], detail::join_path(path, "zeta")));
    }
    if (kind == "piecewise") {
      const std::string kp = detail::join_path(path, "knots");
      if (!j.contains("knots") || !j["knots"].is_array()) throw ConfigError(kp, "must be an array of [t, w] pairs");
      std::vector<WeightFunction::Knot> knots;
      for (std::size_t i = 0; i < j["knots"].size(); ++i) {
        const auto pair = detail::get_vector(j["knots"][i], kp + "[" + std::to_string(i) + "]");
        if (pair.size() != 2) throw ConfigError(kp + "[" + std::to_string(i) + "]", "must be a [t, w] pair");
        knots.emplace_back(pair[0], pair[1]);
      }
      return WeightFunction::piecewise(std::move(knots));
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(detail::join_path(path, "kind"), "unknown weight kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Models: {"kind":"kmeans","centers":[[...],...]} (one array per center) or
// {"kind":"psa","basis":[[...],...]} (one array per basis column).

inline json model_to_json(const Model& m) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenterSet>) {
          return {{"kind", "kmeans"}, {"centers", detail::matrix_rows(s.centers)}};
        } else {
          return {{"kind", "psa"}, {"basis", detail::matrix_rows(s.basis.transpose())}};
        }
      },
      m);
}

inline Model model_from_json(const json& j, const std::string& path = "model") {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError(path, "must be an object with a \"kind\" field");
  const auto kind = detail::get_as<std::string>(j["kind"], detail::join_path(path, "kind"));
  try {
    if (kind == "kmeans") {
      if (!j.contains("centers")) throw ConfigError(detail::join_path(path, "centers"), "is required");
      CenterSet s{detail::get_rows(j["centers"], detail::join_path(path, "centers"))};
      s.validate();
      return s;
    }
    if (kind == "psa") {
      if (!j.contains("basis")) throw ConfigError(detail::join_path(path, "basis"), "is required");
      Subspace s{detail::get_rows(j["basis"], detail::join_path(path, "basis")).transpose()};
      s.validate();
      return s;
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(detail::join_path(path, "kind"), "unknown model kind '" + kind + "'");
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
  return model_from_json(j);
}

// ---------------------------------------------------------------------------
// Fit configuration

inline InitKind parse_init(const std::string& s) {
  if (s == "uniform") return InitKind::Uniform;
  if (s == "kmeanspp") return InitKind::KMeansPP;
  if (s == "gaussian_orthonormal") return InitKind::GaussianOrthonormal;
  throw std::domain_error("unknown init '" + s + "' (expected uniform, kmeanspp, gaussian_orthonormal)");
}

inline json fit_config_to_json(const FitConfig& c) {
  json j = {{"model", to_string(c.model)},
            {"k", c.k},
            {"weight", weight_to_json(c.weight)},
            {"max_iters", c.max_iters},
            {"restarts", c.restarts},
            {"seed", c.seed},
            {"tol", c.tol},
            {"threads", c.threads}};
  if (c.init) j["init"] = to_string(*c.init);
  return j;
}

/// Fields absent from `j` keep their value in `base`.
inline FitConfig fit_config_from_json(const json& j, FitConfig base = {}, const std::string& path = "") {
  using detail::join_path;
  if (!j.is_object()) throw ConfigError(path, "must be a JSON object");
  auto count_field = [&](const char* name) -> std::size_t {
    const auto p = join_path(path, name);
    if (!j[name].is_number_integer() || j[name].get<long long>() < 0) throw ConfigError(p, "must be a nonnegative integer");
    return j[name].get<std::size_t>();
  };
  if (j.contains("model")) {
    const auto m = detail::get_as<std::string>(j["model"], join_path(path, "model"));
    if (m == "kmeans") base.model = ModelKind::KMeans;
    else if (m == "psa") base.model = ModelKind::Psa;
    else throw ConfigError(join_path(path, "model"), "must be \"kmeans\" or \"psa\"");
  }
  if (j.contains("k")) base.k = static_cast<Eigen::Index>(count_field("k"));
  if (j.contains("weight")) base.weight = weight_from_json(j["weight"], join_path(path, "weight"));
  if (j.contains("max_iters")) base.max_iters = count_field("max_iters");
  if (j.contains("restarts")) base.restarts = count_field("restarts");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError(join_path(path, "seed"), "must be an integer");
    base.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tol")) base.tol = detail::get_number(j["tol"], join_path(path, "tol"));
  if (j.contains("threads")) base.threads = static_cast<unsigned>(count_field("threads"));
  if (j.contains("init")) {
    try {
      base.init = parse_init(detail::get_as<std::string>(j["init"], join_path(path, "init")));
    } catch (const std::domain_error& e) {
      throw ConfigError(join_path(path, "init"), e.what());
    }
  }
  try {
    base.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(path, e.what());
  }
  return base;
}

// ---------------------------------------------------------------------------
// Mixture specs for the cluster generator

inline MixtureSpec mixture_spec_from_json(const json& j, const std::string& path = "") {
  using detail::join_path;
  MixtureSpec spec = three_cluster_spec();
  if (!j.is_object()) throw ConfigError(path, "must be a JSON object");
  auto components = [&](const char* group) {
    std::vector<GaussianComponent> out;
    const auto gp = join_path(path, group);
    if (!j[group].is_array()) throw ConfigError(gp, "must be an array of components");
    for (std::size_t c = 0; c < j[group].size(); ++c) {
      const auto& cj = j[group][c];
      const auto cp = gp + "[" + std::to_string(c) + "]";
      if (!cj.is_object()) throw ConfigError(cp, "must be an object");
      if (!cj.contains("mean")) throw ConfigError(cp + ".mean", "is required");
      if (!cj.contains("variance")) throw ConfigError(cp + ".variance", "is required");
      if (!cj.contains("count")) throw ConfigError(cp + ".count", "is required");
      GaussianComponent g;
      const auto mean = detail::get_vector(cj["mean"], cp + ".mean");
      g.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
      if (cj["variance"].is_number()) {
        g.variance = Eigen::VectorXd::Constant(g.mean.size(), cj["variance"].get<double>());
      } else {
        const auto var = detail::get_vector(cj["variance"], cp + ".variance");
        g.variance = Eigen::Map<const Eigen::VectorXd>(var.data(), static_cast<Eigen::Index>(var.size()));
      }
      if (!cj["count"].is_number_integer() || cj["count"].get<long long>() < 0) {
        throw ConfigError(cp + ".count", "must be a nonnegative integer");
      }
      g.count = cj["count"].get<std::size_t>();
      out.push_back(std::move(g));
    }
    return out;
  };
  if (j.contains("inliers")) spec.inliers = components("inliers");
  if (j.contains("outliers")) spec.outliers = components("outliers");
  if (j.contains("truncation")) spec.truncation = detail::get_number(j["truncation"], join_path(path, "truncation"));
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Sweep records (JSONL)

inline json sweep_record_to_json(const SweepRecord& r) {
  return {{"algo", to_string(r.algo)},   {"zeta", r.zeta},
          {"seed", r.seed},              {"test_error", r.test_error},
          {"train_objective", r.train_objective}, {"wall_ms", r.wall_ms}};
}

// ---------------------------------------------------------------------------
// Graph edge lists: one "u v" pair per line, 0-indexed; '#' starts a comment.

inline Adjacency read_edge_list(std::istream& in, std::optional<Eigen::Index> vertices = std::nullopt) {
  std::vector<std::pair<long long, long long>> edges;
  std::string line;
  std::size_t line_no = 0;
  long long max_vertex = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) {
      if (detail::trim(line).empty()) continue;
      throw ParseError("expected \"u v\"", line_no);
    }
    std::string extra;
    if (!(ls >> v) || (ls >> extra)) throw ParseError("expected exactly two vertex indices", line_no);
    if (u < 0 || v < 0) throw ParseError("vertex indices must be nonnegative", line_no);
    if (u == v) throw ParseError("self-loops are not allowed", line_no);
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  const Eigen::Index n = vertices ? *vertices : static_cast<Eigen::Index>(max_vertex + 1);
  if (n < 1) throw ParseError("graph has no vertices");
  if (max_vertex >= n) throw ParseError("vertex index exceeds vertex count " + std::to_string(n));
  Adjacency a = Adjacency::Zero(n, n);
  for (auto [u, v] : edges) a(u, v) = a(v, u) = 1;
  return a;
}

}  // namespace rul

#endif  // RUL_IO_HPP
