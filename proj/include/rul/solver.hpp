#ifndef RUL_SOLVER_HPP
#define RUL_SOLVER_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "rul/dataset.hpp"
#include "rul/lstat.hpp"
#include "rul/models.hpp"
#include "rul/rng.hpp"
#include "rul/weights.hpp"

namespace rul {

enum class ModelKind { KMeans, Psa };
enum class InitKind { Uniform, KMeansPP, GaussianOrthonormal };

inline const char* to_string(ModelKind m) { return m == ModelKind::KMeans ? "kmeans" : "psa"; }

inline const char* to_string(InitKind i) {
  switch (i) {
    case InitKind::Uniform: return "uniform";
    case InitKind::KMeansPP: return "kmeanspp";
    case InitKind::GaussianOrthonormal: return "gaussian_orthonormal";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Initializers

/// k distinct rows drawn uniformly without replacement, in draw order.
inline CenterSet init_uniform(const Points& points, Eigen::Index k, Rng& rng) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::domain_error("cannot draw " + std::to_string(k) + " distinct centers from " + std::to_string(n) + " points");
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  CenterSet s{Eigen::MatrixXd(k, points.cols())};
  for (Eigen::Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
    s.centers.row(i) = points.row(idx[static_cast<std::size_t>(i)]);
  }
  return s;
}

/// D^2 seeding: the first center is uniform, every next one is drawn with
/// probability proportional to the squared distance to the closest chosen
/// center. Falls back to a uniform draw when all distances vanish.
inline CenterSet init_kmeanspp(const Points& points, Eigen::Index k, Rng& rng) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::domain_error("cannot seed " + std::to_string(k) + " centers from " + std::to_string(n) + " points");
  }
  CenterSet s{Eigen::MatrixXd(k, points.cols())};
  std::uniform_int_distribution<Eigen::Index> uniform(0, n - 1);
  s.centers.row(0) = points.row(uniform(rng));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = (points.row(i) - s.centers.row(0)).squaredNorm();
  for (Eigen::Index c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    Eigen::Index chosen;
    if (total > 0.0) {
      std::discrete_distribution<Eigen::Index> draw(d2.begin(), d2.end());
      chosen = draw(rng);
    } else {
      chosen = uniform(rng);
    }
    s.centers.row(c) = points.row(chosen);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& di = d2[static_cast<std::size_t>(i)];
      di = std::min(di, (points.row(i) - s.centers.row(c)).squaredNorm());
    }
  }
  return s;
}

/// Standard normal d x k matrix with orthonormalized columns (modified
/// Gram-Schmidt, applied twice).
inline Subspace init_orthonormal(Eigen::Index d, Eigen::Index k, Rng& rng) {
  if (k < 1 || k > d) throw std::domain_error("orthonormal init needs 1 <= k <= d");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd u(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (;;) {
      for (Eigen::Index i = 0; i < d; ++i) u(i, j) = normal(rng);
      const double drawn = u.col(j).norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index prev = 0; prev < j; ++prev) u.col(j) -= u.col(prev).dot(u.col(j)) * u.col(prev);
      }
      const double kept = u.col(j).norm();
      if (kept > 1e-8 * drawn && kept > 0.0) {
        u.col(j) /= kept;
        break;
      }
    }
  }
  return Subspace{u};
}

// ---------------------------------------------------------------------------
// Model families

/// A model class with an initializer, a distortion, and a descent oracle:
/// descend(x, S, p, W) must not increase phi_S(x, p) for the fixed ranking p.
template <class F>
concept DescentFamily = requires(const F& f, const Points& x, const typename F::model_type& s, const Ranking& p,
                                 const WeightFunction& w, Rng& rng) {
  { f.initialize(x, rng) } -> std::same_as<typename F::model_type>;
  { f.descend(x, s, p, w) } -> std::same_as<typename F::model_type>;
  { f.losses(x, s) } -> std::same_as<LossVector>;
};

struct KMeansFamily {
  using model_type = CenterSet;
  Eigen::Index k = 1;
  InitKind init = InitKind::Uniform;

  CenterSet initialize(const Points& x, Rng& rng) const {
    switch (init) {
      case InitKind::Uniform: return init_uniform(x, k, rng);
      case InitKind::KMeansPP: return init_kmeanspp(x, k, rng);
      case InitKind::GaussianOrthonormal: break;
    }
    throw std::domain_error("gaussian_orthonormal init does not apply to k-means");
  }
  CenterSet descend(const Points& x, const CenterSet& s, const Ranking& p, const WeightFunction& w) const {
    return kmeans_oracle(x, s, p, w);
  }
  LossVector losses(const Points& x, const CenterSet& s) const { return distortions(x, Model{s}); }
};

struct PsaFamily {
  using model_type = Subspace;
  Eigen::Index k = 1;

  Subspace initialize(const Points& x, Rng& rng) const { return init_orthonormal(x.cols(), k, rng); }
  Subspace descend(const Points& x, const Subspace&, const Ranking& p, const WeightFunction& w) const {
    return psa_oracle(x, p, w, k);
  }
  LossVector losses(const Points& x, const Subspace& s) const { return distortions(x, Model{s}); }
};

static_assert(DescentFamily<KMeansFamily>);
static_assert(DescentFamily<PsaFamily>);

// ---------------------------------------------------------------------------
// Alternating minimization

struct RunOptions {
  std::size_t max_iters = 100;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  unsigned threads = 1;
};

template <class M>
struct RestartOutcome {
  M model;
  std::vector<double> trace;  // objective after initialization, then after each iteration
  std::size_t iterations = 0;
};

template <class M>
struct FamilyFit {
  M model;
  std::vector<RestartOutcome<M>> restarts;
  std::size_t best_restart = 0;
  double objective = 0.0;
};

/// One restart: pick S_0, rank its losses, then alternate descent-oracle
/// steps with re-ranking until the objective decrease drops below tol or
/// max_iters iterations have run.
template <DescentFamily F>
RestartOutcome<typename F::model_type> run_restart(const Points& x, const F& family, const WeightFunction& w,
                                                   const RunOptions& opt, Rng rng) {
  RestartOutcome<typename F::model_type> out{family.initialize(x, rng), {}, 0};
  auto loss = family.losses(x, out.model);
  auto rank = rank_losses(loss);
  double objective = phi_perm(loss, w, rank);
  out.trace.push_back(objective);
  for (std::size_t t = 1; t <= opt.max_iters; ++t) {
    out.model = family.descend(x, out.model, rank, w);
    loss = family.losses(x, out.model);
    rank = rank_losses(loss);
    const double next = phi_perm(loss, w, rank);
    out.trace.push_back(next);
    out.iterations = t;
    if (objective - next < opt.tol) break;
    objective = next;
  }
  return out;
}

/// Best-of-restarts alternating minimization. Restart j draws from
/// substream(seed, j), so results do not depend on `threads`.
template <DescentFamily F>
FamilyFit<typename F::model_type> fit_family(const Points& x, const F& family, const WeightFunction& w,
                                             const RunOptions& opt) {
  if (x.rows() < 1) throw std::domain_error("cannot fit an empty dataset");
  if (opt.max_iters < 1 || opt.restarts < 1) throw std::domain_error("max_iters and restarts must be at least 1");
  if (!(opt.tol >= 0.0)) throw std::domain_error("tol must be nonnegative");

  using M = typename F::model_type;
  std::vector<std::optional<RestartOutcome<M>>> slots(opt.restarts);
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.restarts)));
  if (workers == 1) {
    for (std::size_t j = 0; j < opt.restarts; ++j) slots[j] = run_restart(x, family, w, opt, substream(opt.seed, j));
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t j = t; j < opt.restarts; j += workers) {
              slots[j] = run_restart(x, family, w, opt, substream(opt.seed, j));
            }
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  FamilyFit<M> fit{slots[0]->model, {}, 0, slots[0]->trace.back()};
  fit.restarts.reserve(opt.restarts);
  for (std::size_t j = 0; j < opt.restarts; ++j) {
    fit.restarts.push_back(std::move(*slots[j]));
    const double final_obj = fit.restarts.back().trace.back();
    if (final_obj < fit.objective) {
      fit.objective = final_obj;
      fit.best_restart = j;
    }
  }
  fit.model = fit.restarts[fit.best_restart].model;
  return fit;
}

// ---------------------------------------------------------------------------
// Type-erased front end

struct FitConfig {
  ModelKind model = ModelKind::KMeans;
  Eigen::Index k = 1;
  WeightFunction weight = WeightFunction::identity();
  std::size_t max_iters = 100;
  std::size_t restarts = 1;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  std::optional<InitKind> init;  // defaults: uniform for k-means, gaussian_orthonormal for psa
  unsigned threads = 1;

  InitKind effective_init() const {
    if (init) return *init;
    return model == ModelKind::KMeans ? InitKind::Uniform : InitKind::GaussianOrthonormal;
  }

  void validate() const {
    if (k < 1) throw std::domain_error("k must be at least 1");
    if (max_iters < 1) throw std::domain_error("max_iters must be at least 1");
    if (restarts < 1) throw std::domain_error("restarts must be at least 1");
    if (!(tol >= 0.0)) throw std::domain_error("tol must be nonnegative");
    const InitKind i = effective_init();
    if (model == ModelKind::Psa && i != InitKind::GaussianOrthonormal) {
      throw std::domain_error(std::string("init ") + to_string(i) + " does not apply to psa");
    }
    if (model == ModelKind::KMeans && i == InitKind::GaussianOrthonormal) {
      throw std::domain_error("gaussian_orthonormal init does not apply to k-means");
    }
  }

  RunOptions run_options() const { return {max_iters, restarts, seed, tol, threads}; }
};

struct FitResult {
  Model model;
  std::vector<std::vector<double>> objective_trace;  // per restart
  std::vector<std::size_t> iterations;               // per restart
  std::size_t best_restart = 0;
  std::size_t iterations_used = 0;  // of the best restart
  double objective = 0.0;           // final objective of the best restart
};

template <class M>
FitResult to_fit_result(FamilyFit<M>&& fit) {
  FitResult out{Model{std::move(fit.model)}, {}, {}, fit.best_restart, 0, fit.objective};
  for (auto& r : fit.restarts) {
    out.objective_trace.push_back(std::move(r.trace));
    out.iterations.push_back(r.iterations);
  }
  out.iterations_used = out.iterations[out.best_restart];
  return out;
}

inline FitResult fit(const Points& x, const FitConfig& cfg) {
  cfg.validate();
  if (x.rows() < 1) throw std::domain_error("cannot fit an empty dataset");
  if (cfg.model == ModelKind::KMeans) {
    if (cfg.k > x.rows()) throw std::domain_error("k-means with k larger than the number of points");
    return to_fit_result(fit_family(x, KMeansFamily{cfg.k, cfg.effective_init()}, cfg.weight, cfg.run_options()));
  }
  if (cfg.k > x.cols()) {
    throw std::domain_error("psa dimension k=" + std::to_string(cfg.k) + " exceeds data dimension " +
                            std::to_string(x.cols()));
  }
  return to_fit_result(fit_family(x, PsaFamily{cfg.k}, cfg.weight, cfg.run_options()));
}

inline FitResult fit(const Dataset& data, const FitConfig& cfg) { return fit(data.points, cfg); }

}  // namespace rul

#endif  // RUL_SOLVER_HPP
