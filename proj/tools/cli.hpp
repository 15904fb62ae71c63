#ifndef RUL_TOOLS_CLI_HPP
#define RUL_TOOLS_CLI_HPP

// Command-line front end. Kept in a header so the test suite can drive the
// commands in-process.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rul/io.hpp"
#include "rul/rul.hpp"

namespace rul::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kIo = 3, kGuard = 4 };

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what, std::string("invalid JSON: ") + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

inline DepthMode depth_from(const std::string& mode, std::size_t m, std::uint64_t seed, const std::string& path) {
  if (mode == "exact") return DepthMode::exact();
  if (mode == "randomized") {
    if (m < 1) throw ConfigError(path + ".m", "must be at least 1");
    return DepthMode::randomized(m, seed);
  }
  throw ConfigError(path + ".mode", "must be \"exact\" or \"randomized\"");
}

inline std::vector<double> column(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace detail

struct CsvFlags {
  bool header = true;
  bool labels = true;
  CsvOptions options() const { return {header, labels}; }
};

inline void add_csv_flags(CLI::App* cmd, CsvFlags& f) {
  cmd->add_flag("--header,!--no-header", f.header, "CSV has a header row (default: yes)");
  cmd->add_flag("--labels,!--no-labels", f.labels, "CSV has a trailing label column (default: yes)");
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string config;
  std::string generator;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  json cfg = a.config.empty() ? json::object() : detail::read_json_file(a.config);
  if (!cfg.is_object()) throw ConfigError("", "generator config must be a JSON object");
  std::string generator = a.generator;
  if (generator.empty()) {
    if (!cfg.contains("generator")) throw ConfigError("generator", "is required (clusters | psa-strip)");
    generator = rul::detail::get_as<std::string>(cfg["generator"], "generator");
  }
  Dataset data;
  if (generator == "clusters") {
    data = gen_clusters_with_outliers(mixture_spec_from_json(cfg), a.seed);
  } else if (generator == "psa-strip") {
    auto count = [&](const char* field, std::size_t def) -> std::size_t {
      if (!cfg.contains(field)) return def;
      if (!cfg[field].is_number_integer() || cfg[field].get<long long>() < 0) {
        throw ConfigError(field, "must be a nonnegative integer");
      }
      return cfg[field].get<std::size_t>();
    };
    data = gen_psa_strip(a.seed, count("inliers", 50), count("outliers", 50));
  } else {
    throw ConfigError("generator", "unknown generator '" + generator + "' (expected clusters | psa-strip)");
  }
  save_csv(a.out, data);
  out << json{{"rows", data.size()}, {"dim", data.dim()}, {"inliers", data.count(PointLabel::Inlier)},
              {"outliers", data.count(PointLabel::Outlier)}, {"out", a.out}}
             .dump()
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string config;
  std::string data;
  CsvFlags csv;
  std::optional<std::string> algo;
  std::optional<long long> k;
  std::optional<double> zeta;
  std::optional<std::string> weight;
  std::optional<long long> restarts;
  std::optional<long long> max_iters;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> init;
  std::optional<unsigned> threads;
  std::optional<std::string> depth;
  std::optional<long long> depth_m;
  std::string out;
  std::string trace;
};

struct FitPlan {
  Algo algo = Algo::Rkm;
  FitConfig cfg;
  std::optional<double> zeta;
  DepthMode depth;
};

/// Merges the optional JSON config with command-line flags (flags win).
inline FitPlan plan_fit(const FitArgs& a) {
  json cfg = a.config.empty() ? json::object() : detail::read_json_file(a.config);
  if (!cfg.is_object()) throw ConfigError("", "fit config must be a JSON object");
  auto set_if = [&](const char* key, const auto& opt) {
    if (opt) cfg[key] = *opt;
  };
  set_if("algo", a.algo);
  set_if("k", a.k);
  set_if("zeta", a.zeta);
  set_if("restarts", a.restarts);
  set_if("max_iters", a.max_iters);
  set_if("seed", a.seed);
  set_if("tol", a.tol);
  set_if("init", a.init);
  set_if("threads", a.threads);
  if (a.weight) cfg["weight"] = detail::parse_json_text(*a.weight, "weight");
  if (a.depth) cfg["depth"]["mode"] = *a.depth;
  if (a.depth_m) cfg["depth"]["m"] = *a.depth_m;

  FitPlan plan;
  if (!cfg.contains("algo")) throw ConfigError("algo", "is required");
  try {
    plan.algo = parse_algo(rul::detail::get_as<std::string>(cfg["algo"], "algo"));
  } catch (const std::domain_error& e) {
    throw ConfigError("algo", e.what());
  }
  if (cfg.contains("zeta")) {
    const double z = rul::detail::get_number(cfg["zeta"], "zeta");
    if (!(z > 0.0 && z <= 1.0)) throw ConfigError("zeta", "must lie in (0,1], got " + std::to_string(z));
    plan.zeta = z;
  }

  FitConfig base;
  base.model = model_kind(plan.algo);
  if (base.model == ModelKind::KMeans && (plan.algo == Algo::KMeans || plan.algo == Algo::SdKMeans)) {
    base.init = InitKind::KMeansPP;
  }
  json fit_fields = cfg;
  for (const char* k : {"algo", "zeta", "depth", "data"}) fit_fields.erase(k);
  fit_fields["model"] = to_string(base.model);
  const bool explicit_weight = fit_fields.contains("weight");
  plan.cfg = fit_config_from_json(fit_fields, base);

  switch (plan.algo) {
    case Algo::KMeans:
    case Algo::Psa:
      if (explicit_weight && plan.cfg.weight.kind() != WeightKind::Identity) {
        throw ConfigError("weight", std::string(to_string(plan.algo)) + " always uses identity weights");
      }
      plan.cfg.weight = WeightFunction::identity();
      break;
    case Algo::Rkm:
    case Algo::Rpsa:
      if (!explicit_weight) {
        if (!plan.zeta) throw ConfigError("zeta", std::string("is required for ") + to_string(plan.algo));
        plan.cfg.weight = WeightFunction::hard(*plan.zeta);
      }
      break;
    case Algo::SdKMeans:
    case Algo::SdPsa:
      if (!plan.zeta) throw ConfigError("zeta", std::string("is required for ") + to_string(plan.algo));
      plan.cfg.weight = WeightFunction::identity();
      break;
  }

  std::string mode = "exact";
  std::size_t m = 4000;
  if (cfg.contains("depth")) {
    const auto& d = cfg["depth"];
    if (!d.is_object()) throw ConfigError("depth", "must be an object");
    if (d.contains("mode")) mode = rul::detail::get_as<std::string>(d["mode"], "depth.mode");
    if (d.contains("m")) {
      if (!d["m"].is_number_integer() || d["m"].get<long long>() < 1) throw ConfigError("depth.m", "must be >= 1");
      m = d["m"].get<std::size_t>();
    }
  }
  plan.depth = detail::depth_from(mode, m, plan.cfg.seed, "depth");
  return plan;
}

inline FitResult execute_fit(const FitPlan& plan, const Dataset& data) {
  if (plan.cfg.model == ModelKind::KMeans && plan.cfg.k > data.size()) {
    throw ConfigError("k", "exceeds the number of points");
  }
  if (plan.cfg.model == ModelKind::Psa && plan.cfg.k > data.dim()) {
    throw ConfigError("k", "exceeds the data dimension");
  }
  if (plan.algo == Algo::SdKMeans || plan.algo == Algo::SdPsa) return sd_pipeline(data, *plan.zeta, plan.cfg, plan.depth);
  return fit(data, plan.cfg);
}

inline int cmd_fit(const FitArgs& a, std::ostream& out) {
  const FitPlan plan = plan_fit(a);
  const Dataset data = load_csv(a.data, a.csv.options());
  const FitResult r = execute_fit(plan, data);

  json model = model_to_json(r.model);
  model["algo"] = to_string(plan.algo);
  model["objective"] = r.objective;
  model["best_restart"] = r.best_restart;
  model["iterations_used"] = r.iterations_used;
  model["config"] = fit_config_to_json(plan.cfg);
  if (plan.zeta) model["zeta"] = *plan.zeta;
  detail::write_text(a.out, model.dump(2) + "\n", out);

  if (!a.trace.empty()) {
    std::ostringstream trace;
    for (std::size_t j = 0; j < r.objective_trace.size(); ++j)
      for (std::size_t t = 0; t < r.objective_trace[j].size(); ++t)
        trace << json{{"restart", j}, {"iter", t}, {"objective", r.objective_trace[j][t]}}.dump() << '\n';
    detail::write_text(a.trace, trace.str(), out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string data;
  CsvFlags csv;
  std::string model;
  std::string truth;
  std::optional<double> zeta;
  bool inliers_only = false;
};

inline json evaluate(const Dataset& data_in, const Model& model, const std::optional<Model>& truth,
                     std::optional<double> zeta, bool inliers_only) {
  Dataset data = data_in;
  if (inliers_only) {
    if (!data.labels) throw ConfigError("inliers-only", "data has no inlier/outlier labels");
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < data.labels->size(); ++i)
      if ((*data.labels)[i] == PointLabel::Inlier) keep.push_back(i);
    data = data.select(keep);
  }
  if (data.dim() != model_dim(model)) throw ConfigError("model", "dimension does not match the data");
  json m = {{"n", data.size()}, {"test_error", reconstruction_error(data, model)}};
  if (zeta) m["robust_objective"] = lstat_objective(distortions(data.points, model), WeightFunction::hard(*zeta));
  if (truth) {
    if (std::holds_alternative<CenterSet>(model) && std::holds_alternative<CenterSet>(*truth)) {
      m["center_recovery"] = center_recovery(std::get<CenterSet>(*truth), std::get<CenterSet>(model));
    } else if (std::holds_alternative<Subspace>(model) && std::holds_alternative<Subspace>(*truth)) {
      const double angle = subspace_angle(std::get<Subspace>(*truth), std::get<Subspace>(model));
      m["subspace_angle"] = angle;
      m["subspace_angle_deg"] = angle * 180.0 / std::numbers::pi;
    } else {
      throw ConfigError("truth", "reference model kind differs from the evaluated model");
    }
  }
  return m;
}

inline int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.zeta && !(*a.zeta > 0.0 && *a.zeta <= 1.0)) throw ConfigError("zeta", "must lie in (0,1]");
  const Dataset data = load_csv(a.data, a.csv.options());
  const Model model = load_model(a.model);
  std::optional<Model> truth;
  if (!a.truth.empty()) truth = load_model(a.truth);
  out << evaluate(data, model, truth, a.zeta, a.inliers_only).dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string out;
  std::string summary;
  unsigned threads = 1;
};

struct SweepPlan {
  SweepProtocol protocol;
  std::vector<double> zetas;
  std::vector<Algo> algos;
  std::vector<std::uint64_t> seeds;
};

inline SweepPlan plan_sweep(const json& cfg) {
  using rul::detail::get_as;
  if (!cfg.is_object()) throw ConfigError("", "sweep config must be a JSON object");
  SweepPlan plan;
  AlgoSettings s;
  auto count = [&](const char* field, std::size_t def) -> std::size_t {
    if (!cfg.contains(field)) return def;
    if (!cfg[field].is_number_integer() || cfg[field].get<long long>() < 1) throw ConfigError(field, "must be >= 1");
    return cfg[field].get<std::size_t>();
  };
  s.k = static_cast<Eigen::Index>(count("k", 1));
  s.max_iters = count("max_iters", 100);
  s.restarts = count("restarts", 10);
  if (cfg.contains("tol")) s.tol = rul::detail::get_number(cfg["tol"], "tol");
  if (cfg.contains("depth")) {
    const auto& d = cfg["depth"];
    if (!d.is_object()) throw ConfigError("depth", "must be an object");
    const std::string mode = d.contains("mode") ? get_as<std::string>(d["mode"], "depth.mode") : "exact";
    std::size_t m = 4000;
    if (d.contains("m")) {
      if (!d["m"].is_number_integer() || d["m"].get<long long>() < 1) throw ConfigError("depth.m", "must be >= 1");
      m = d["m"].get<std::size_t>();
    }
    s.depth = detail::depth_from(mode, m, 0, "depth");
  }
  if (cfg.contains("rkm_init")) {
    try {
      s.robust_init = parse_init(get_as<std::string>(cfg["rkm_init"], "rkm_init"));
    } catch (const std::domain_error& e) {
      throw ConfigError("rkm_init", e.what());
    }
  }

  if (!cfg.contains("protocol")) throw ConfigError("protocol", "is required (clusters | psa-strip | csv)");
  const auto name = get_as<std::string>(cfg["protocol"], "protocol");
  if (name == "clusters") {
    plan.protocol = clusters_protocol(cfg.contains("spec") ? mixture_spec_from_json(cfg["spec"], "spec")
                                                           : three_cluster_spec(),
                                      s);
  } else if (name == "psa-strip") {
    plan.protocol = psa_strip_protocol(s);
  } else if (name == "csv") {
    if (!cfg.contains("data")) throw ConfigError("data", "is required for the csv protocol");
    if (!cfg.contains("inlier_classes")) throw ConfigError("inlier_classes", "is required for the csv protocol");
    const bool header = cfg.contains("header") ? get_as<bool>(cfg["header"], "header") : true;
    Dataset data = load_csv(get_as<std::string>(cfg["data"], "data"), {header, true});
    plan.protocol = csv_protocol(std::move(data), get_as<std::vector<std::string>>(cfg["inlier_classes"], "inlier_classes"),
                                 count("n_in", 30), cfg.contains("n_out") ? get_as<std::size_t>(cfg["n_out"], "n_out") : 15,
                                 s);
  } else {
    throw ConfigError("protocol", "unknown protocol '" + name + "'");
  }

  if (!cfg.contains("zetas")) throw ConfigError("zetas", "is required");
  plan.zetas = rul::detail::get_vector(cfg["zetas"], "zetas");
  for (std::size_t i = 0; i < plan.zetas.size(); ++i) {
    if (!(plan.zetas[i] > 0.0 && plan.zetas[i] <= 1.0)) {
      throw ConfigError("zetas[" + std::to_string(i) + "]", "must lie in (0,1]");
    }
  }
  if (!cfg.contains("algos") || !cfg["algos"].is_array()) throw ConfigError("algos", "must be an array of names");
  for (std::size_t i = 0; i < cfg["algos"].size(); ++i) {
    const std::string path = "algos[" + std::to_string(i) + "]";
    try {
      plan.algos.push_back(parse_algo(get_as<std::string>(cfg["algos"][i], path)));
    } catch (const std::domain_error& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (!cfg.contains("seeds")) throw ConfigError("seeds", "is required");
  plan.seeds = get_as<std::vector<std::uint64_t>>(cfg["seeds"], "seeds");
  if (plan.zetas.empty() || plan.algos.empty() || plan.seeds.empty()) {
    throw ConfigError("", "zetas, algos and seeds must be nonempty");
  }
  return plan;
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepPlan plan = plan_sweep(detail::read_json_file(a.config));
  const auto records = zeta_sweep(plan.protocol, plan.zetas, plan.algos, plan.seeds, a.threads);
  std::ostringstream lines;
  for (const auto& r : records) lines << sweep_record_to_json(r).dump() << '\n';
  detail::write_text(a.out, lines.str(), out);
  if (!a.summary.empty()) {
    std::ostringstream s;
    for (const auto& row : summarize_sweep(records)) {
      s << json{{"algo", to_string(row.algo)}, {"zeta", row.zeta}, {"median", row.median},
                {"min", row.min},              {"max", row.max},   {"runs", row.runs}}
               .dump()
        << '\n';
    }
    detail::write_text(a.summary, s.str(), out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct DepthArgs {
  std::string data;
  CsvFlags csv;
  std::string mode = "exact";
  std::size_t m = 4000;
  std::uint64_t seed = 0;
  std::optional<double> zeta;
  std::string out;
};

inline int cmd_depth(const DepthArgs& a, std::ostream& out) {
  if (a.zeta && !(*a.zeta > 0.0 && *a.zeta <= 1.0)) throw ConfigError("zeta", "must lie in (0,1]");
  const DepthMode mode = detail::depth_from(a.mode, a.m, a.seed, "depth");
  const Dataset data = load_csv(a.data, a.csv.options());
  const auto scores = spherical_depth_scores(data.points, mode);
  json j = {{"mode", a.mode}, {"scores", scores}};
  if (mode.kind == DepthMode::Kind::Randomized) j["m"] = a.m;
  if (a.zeta) j["retained"] = depth_filter_indices(scores, *a.zeta);
  detail::write_text(a.out, j.dump() + "\n", out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct OracleArgs {
  std::string data;
  CsvFlags csv;
  std::optional<std::size_t> h;
  std::string graph;
  std::optional<long long> vertices;
  bool decide = false;
  std::optional<double> threshold;
  bool allow_large = false;
  std::string out;
};

inline int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  json j;
  if (!a.graph.empty()) {
    if (!a.decide) throw ConfigError("decide", "--graph requires --decide");
    std::ifstream in(a.graph);
    if (!in) throw std::ios_base::failure("cannot open " + a.graph);
    const Adjacency adj = read_edge_list(in, a.vertices ? std::optional<Eigen::Index>(*a.vertices) : std::nullopt);
    const Eigen::Index n = adj.rows();
    if (n % 2 != 0) throw ConfigError("graph", "clique decision needs an even number of vertices");
    if (!a.allow_large && n > kCliqueGuard) {
      throw GuardError("clique decision refuses n=" + std::to_string(n) + " > " + std::to_string(kCliqueGuard));
    }
    double threshold;
    std::string source = "given";
    if (a.threshold) {
      threshold = *a.threshold;
    } else {
      threshold = derived_clique_threshold(n);
      source = "derived";
    }
    const double min_cost =
        brute_robust_1mean(clique_embedding(adj), static_cast<std::size_t>(n / 2), a.allow_large).cost;
    j = {{"n", n},
         {"h", n / 2},
         {"threshold", threshold},
         {"threshold_source", source},
         {"min_cost", min_cost},
         {"decision", min_cost <= threshold}};
  } else {
    if (a.data.empty()) throw ConfigError("data", "either --data with --h or --graph with --decide is required");
    if (!a.h) throw ConfigError("h", "is required with --data");
    const Dataset data = load_csv(a.data, a.csv.options());
    const auto r = brute_robust_1mean(data.points, *a.h, a.allow_large);
    j = {{"h", *a.h}, {"subset", r.subset}, {"center", detail::column(r.center)}, {"cost", r.cost}};
  }
  detail::write_text(a.out, j.dump() + "\n", out);
  return kOk;
}

// ---------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs the selected command.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Robust unsupervised learning with L-statistic objectives", "rul"};
  app.require_subcommand(1);
  // "-h" stays free for the oracle's --h subset size; subcommands inherit this.
  app.set_help_flag("--help", "Print this help message and exit");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic dataset as CSV");
  g->add_option("--config", gen.config, "JSON generator config");
  g->add_option("--generator", gen.generator, "clusters | psa-strip (overrides config)");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output CSV path")->required();

  FitArgs fa;
  auto* f = app.add_subcommand("fit", "Fit a model and write it as JSON");
  f->add_option("--config", fa.config, "JSON fit config (flags override fields)");
  f->add_option("--data", fa.data, "Training CSV")->required();
  add_csv_flags(f, fa.csv);
  f->add_option("--algo", fa.algo, "kmeans | psa | rkm | rpsa | sd-kmeans | sd-psa");
  f->add_option("--k", fa.k, "Number of centers or subspace dimension");
  f->add_option("--zeta", fa.zeta, "Cutoff mass in (0,1]");
  f->add_option("--weight", fa.weight, "Weight function as JSON, overrides --zeta for rkm/rpsa");
  f->add_option("--restarts", fa.restarts, "Number of restarts");
  f->add_option("--max-iters", fa.max_iters, "Iteration cap per restart");
  f->add_option("--seed", fa.seed, "Random seed");
  f->add_option("--tol", fa.tol, "Stop when the objective decreases by less than this");
  f->add_option("--init", fa.init, "uniform | kmeanspp | gaussian_orthonormal");
  f->add_option("--threads", fa.threads, "Worker threads for restarts");
  f->add_option("--depth", fa.depth, "Spherical depth mode for sd-*: exact | randomized");
  f->add_option("--depth-m", fa.depth_m, "Pairs per point for randomized depth");
  f->add_option("--out", fa.out, "Model JSON path (default: stdout)");
  f->add_option("--trace", fa.trace, "Objective trace JSONL path");

  EvalArgs ea;
  auto* e = app.add_subcommand("eval", "Evaluate a model on a dataset");
  e->add_option("--data", ea.data, "Test CSV")->required();
  add_csv_flags(e, ea.csv);
  e->add_option("--model", ea.model, "Model JSON")->required();
  e->add_option("--truth", ea.truth, "Reference model JSON");
  e->add_option("--zeta", ea.zeta, "Also report the hard-threshold objective at this cutoff");
  e->add_flag("--inliers-only", ea.inliers_only, "Evaluate only rows labelled inlier");

  SweepArgs sa;
  auto* s = app.add_subcommand("sweep", "Run a zeta sweep and write JSONL records");
  s->add_option("--config", sa.config, "Sweep config JSON")->required();
  s->add_option("--out", sa.out, "JSONL output path (default: stdout)");
  s->add_option("--summary", sa.summary, "Per-(algo, zeta) median/min/max JSONL");
  s->add_option("--threads", sa.threads, "Concurrent sweep cells");

  DepthArgs da;
  auto* d = app.add_subcommand("depth", "Spherical depth scores");
  d->add_option("--data", da.data, "Input CSV")->required();
  add_csv_flags(d, da.csv);
  d->add_option("--mode", da.mode, "exact | randomized");
  d->add_option("--m", da.m, "Pairs per point (randomized)");
  d->add_option("--seed", da.seed, "Random seed (randomized)");
  d->add_option("--zeta", da.zeta, "Also list the indices retained at this cutoff");
  d->add_option("--out", da.out, "Output JSON path (default: stdout)");

  OracleArgs oa;
  auto* o = app.add_subcommand("oracle", "Exact robust 1-means and clique decision");
  o->add_option("--data", oa.data, "Input CSV for brute-force robust 1-means");
  add_csv_flags(o, oa.csv);
  o->add_option("--h", oa.h, "Subset size");
  o->add_option("--graph", oa.graph, "Edge list (one \"u v\" per line, 0-indexed)");
  o->add_option("--vertices", oa.vertices, "Vertex count (default: largest index + 1)");
  o->add_flag("--decide", oa.decide, "Decide n/2-clique through robust 1-means");
  o->add_option("--threshold", oa.threshold, "Cost threshold (default: derived boundary)");
  o->add_flag("--allow-large", oa.allow_large, "Lift the enumeration guards");
  o->add_option("--out", oa.out, "Output JSON path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& pe) {
    err << "usage error: " << pe.what() << '\n';
    return kValidation;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (f->parsed()) return cmd_fit(fa, out);
    if (e->parsed()) return cmd_eval(ea, out);
    if (s->parsed()) return cmd_sweep(sa, out);
    if (d->parsed()) return cmd_depth(da, out);
    if (o->parsed()) return cmd_oracle(oa, out);
  } catch (const GuardError& ex) {
    err << "guard: " << ex.what() << '\n';
    return kGuard;
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << '\n';
    return kValidation;
  } catch (const ParseError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kIo;
  } catch (const std::ios_base::failure& ex) {
    err << "i/o error: " << ex.what() << '\n';
    return kIo;
  } catch (const std::domain_error& ex) {
    err << "validation error: " << ex.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace rul::cli

#endif  // RUL_TOOLS_CLI_HPP
