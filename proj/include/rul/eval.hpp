#ifndef RUL_EVAL_HPP
#define RUL_EVAL_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "rul/baselines.hpp"
#include "rul/data.hpp"
#include "rul/dataset.hpp"
#include "rul/lstat.hpp"
#include "rul/models.hpp"
#include "rul/solver.hpp"

namespace rul {

/// Mean (unweighted) distortion of the test points under `model`.
inline double reconstruction_error(const Points& test, const Model& model) {
  if (test.rows() < 1) throw std::domain_error("reconstruction error of an empty test set");
  return lstat_objective(distortions(test, model), WeightFunction::identity());
}

inline double reconstruction_error(const Dataset& test, const Model& model) {
  return reconstruction_error(test.points, model);
}

/// |objective on train - objective on holdout| for one fixed model: a
/// per-model proxy for the uniform estimation error.
inline double estimation_gap(const Points& train, const Points& holdout, const Model& model, const WeightFunction& w) {
  return std::abs(lstat_objective(distortions(train, model), w) - lstat_objective(distortions(holdout, model), w));
}

/// Largest principal angle (radians) between two subspaces of equal shape.
inline double subspace_angle(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim() || a.k() != b.k()) throw std::domain_error("subspaces differ in shape");
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.basis.transpose() * b.basis);
  const double smallest = std::clamp(svd.singularValues().minCoeff(), 0.0, 1.0);
  return std::acos(smallest);
}

/// For every true center, distance to the nearest learned center; returns the maximum.
inline double center_recovery(const CenterSet& truth, const CenterSet& learned) {
  if (truth.dim() != learned.dim()) throw std::domain_error("center sets differ in dimension");
  double worst = 0.0;
  for (Eigen::Index c = 0; c < truth.k(); ++c) {
    worst = std::max(worst, std::sqrt(kmeans_distortion(truth.centers.row(c).transpose(), learned).distance));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// zeta sweeps

enum class Algo { KMeans, Psa, Rkm, Rpsa, SdKMeans, SdPsa };

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::KMeans: return "kmeans";
    case Algo::Psa: return "psa";
    case Algo::Rkm: return "rkm";
    case Algo::Rpsa: return "rpsa";
    case Algo::SdKMeans: return "sd-kmeans";
    case Algo::SdPsa: return "sd-psa";
  }
  return "?";
}

inline Algo parse_algo(const std::string& s) {
  for (Algo a : {Algo::KMeans, Algo::Psa, Algo::Rkm, Algo::Rpsa, Algo::SdKMeans, Algo::SdPsa}) {
    if (s == to_string(a)) return a;
  }
  throw std::domain_error("unknown algorithm '" + s + "' (expected kmeans, psa, rkm, rpsa, sd-kmeans, sd-psa)");
}

inline bool uses_zeta(Algo a) { return a != Algo::KMeans && a != Algo::Psa; }
inline ModelKind model_kind(Algo a) {
  return (a == Algo::KMeans || a == Algo::Rkm || a == Algo::SdKMeans) ? ModelKind::KMeans : ModelKind::Psa;
}

/// Shared settings for running one of the six algorithms.
struct AlgoSettings {
  Eigen::Index k = 1;
  std::size_t max_iters = 100;
  std::size_t restarts = 10;
  double tol = 1e-7;
  InitKind robust_init = InitKind::Uniform;      // rkm
  InitKind baseline_init = InitKind::KMeansPP;   // kmeans, sd-kmeans
  DepthMode depth = DepthMode::exact();          // randomized seed is replaced by the run seed
  unsigned threads = 1;
};

/// Runs `algo` on `train`; zeta is ignored by kmeans and psa.
inline FitResult run_algo(Algo algo, const Dataset& train, double zeta, const AlgoSettings& s, std::uint64_t seed) {
  FitConfig cfg;
  cfg.model = model_kind(algo);
  cfg.k = s.k;
  cfg.max_iters = s.max_iters;
  cfg.restarts = s.restarts;
  cfg.tol = s.tol;
  cfg.seed = seed;
  cfg.threads = s.threads;
  if (cfg.model == ModelKind::KMeans) {
    cfg.init = algo == Algo::Rkm ? s.robust_init : s.baseline_init;
  }
  switch (algo) {
    case Algo::KMeans:
    case Algo::Psa: return fit(train, cfg);
    case Algo::Rkm:
    case Algo::Rpsa: cfg.weight = WeightFunction::hard(zeta); return fit(train, cfg);
    case Algo::SdKMeans:
    case Algo::SdPsa: {
      DepthMode mode = s.depth;
      mode.seed = seed;
      return sd_pipeline(train, zeta, cfg, mode);
    }
  }
  throw std::logic_error("unhandled algorithm");
}

struct SweepProtocol {
  std::string name;
  std::function<Split(std::uint64_t)> make;  // train/test data for a seed
  AlgoSettings settings;
};

/// Seed for held-out data, distinct from the training-data stream of `seed`.
inline std::uint64_t test_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x7e57da7a5eedULL); }

/// Train on the mixture; test on fresh inliers drawn from the same components.
inline SweepProtocol clusters_protocol(const MixtureSpec& spec, const AlgoSettings& settings) {
  MixtureSpec clean = spec;
  clean.outliers.clear();
  return {"clusters",
          [spec, clean](std::uint64_t seed) {
            return Split{gen_clusters_with_outliers(spec, seed), gen_clusters_with_outliers(clean, test_seed(seed))};
          },
          settings};
}

/// Train on the strip with sector outliers; test on fresh strip inliers.
inline SweepProtocol psa_strip_protocol(const AlgoSettings& settings, std::size_t n_inliers = 50,
                                        std::size_t n_outliers = 50) {
  return {"psa-strip",
          [n_inliers, n_outliers](std::uint64_t seed) {
            return Split{gen_psa_strip(seed, n_inliers, n_outliers), gen_psa_strip(test_seed(seed), n_inliers, 0)};
          },
          settings};
}

/// Seeded class subsampling of a labelled dataset (see subsample_protocol).
inline SweepProtocol csv_protocol(Dataset data, std::vector<std::string> inlier_classes, std::size_t n_in,
                                  std::size_t n_out, const AlgoSettings& settings) {
  return {"csv",
          [data = std::move(data), inlier_classes = std::move(inlier_classes), n_in, n_out](std::uint64_t seed) {
            return subsample_protocol(data, inlier_classes, n_in, n_out, seed);
          },
          settings};
}

struct SweepRecord {
  Algo algo;
  double zeta;
  std::uint64_t seed;
  double test_error;
  double train_objective;
  double wall_ms;
};

/// One record per (algo, zeta, seed); algorithms that ignore zeta run once
/// per seed and are reported at zeta = 1. Records come back sorted by
/// (algo name, zeta, seed) whatever the execution order.
inline std::vector<SweepRecord> zeta_sweep(const SweepProtocol& protocol, const std::vector<double>& zetas,
                                           const std::vector<Algo>& algos, const std::vector<std::uint64_t>& seeds,
                                           unsigned threads = 1) {
  if (zetas.empty() || algos.empty() || seeds.empty()) throw std::domain_error("sweep needs zetas, algos and seeds");
  for (double z : zetas) {
    if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("sweep zeta outside (0,1]: " + std::to_string(z));
  }
  struct Cell {
    Algo algo;
    double zeta;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (Algo a : algos) {
    if (uses_zeta(a)) {
      for (double z : zetas)
        for (auto s : seeds) cells.push_back({a, z, s});
    } else {
      for (auto s : seeds) cells.push_back({a, 1.0, s});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    return std::make_tuple(std::string(to_string(x.algo)), x.zeta, x.seed) <
           std::make_tuple(std::string(to_string(y.algo)), y.zeta, y.seed);
  });

  std::vector<SweepRecord> out(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    const Split split = protocol.make(c.seed);
    const auto start = std::chrono::steady_clock::now();
    const FitResult r = run_algo(c.algo, split.train, c.zeta, protocol.settings, c.seed);
    const auto stop = std::chrono::steady_clock::now();
    out[i] = {c.algo, c.zeta, c.seed, reconstruction_error(split.test, r.model), r.objective,
              std::chrono::duration<double, std::milli>(stop - start).count()};
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < cells.size(); i += workers) run_cell(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct SweepSummary {
  Algo algo;
  double zeta;
  double median;
  double min;
  double max;
  std::size_t runs;
};

/// Median, min and max test error over seeds for each (algo, zeta).
inline std::vector<SweepSummary> summarize_sweep(const std::vector<SweepRecord>& records) {
  std::vector<SweepSummary> out;
  std::size_t i = 0;
  while (i < records.size()) {
    std::vector<double> errs;
    const Algo a = records[i].algo;
    const double z = records[i].zeta;
    for (; i < records.size() && records[i].algo == a && records[i].zeta == z; ++i) errs.push_back(records[i].test_error);
    std::sort(errs.begin(), errs.end());
    const std::size_t m = errs.size();
    const double median = m % 2 ? errs[m / 2] : 0.5 * (errs[m / 2 - 1] + errs[m / 2]);
    out.push_back({a, z, median, errs.front(), errs.back(), m});
  }
  return out;
}

}  // namespace rul

#endif  // RUL_EVAL_HPP
