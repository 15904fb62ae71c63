#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "rul/solver.hpp"
#include "test_support.hpp"

using Eigen::MatrixXd;
using rul::FitConfig;
using rul::InitKind;
using rul::ModelKind;
using rul::WeightFunction;

namespace {

MatrixXd column(std::initializer_list<double> v) {
  MatrixXd m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

void expect_same(const rul::FitResult& a, const rul::FitResult& b) {
  EXPECT_EQ(a.objective_trace, b.objective_trace);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.objective, b.objective);
  ASSERT_EQ(a.model.index(), b.model.index());
  if (const auto* c = std::get_if<rul::CenterSet>(&a.model)) {
    EXPECT_EQ(c->centers, std::get<rul::CenterSet>(b.model).centers);
  } else {
    EXPECT_EQ(std::get<rul::Subspace>(a.model).basis, std::get<rul::Subspace>(b.model).basis);
  }
}

}  // namespace

TEST(Fit, SinglePoint) {
  FitConfig cfg;
  cfg.weight = WeightFunction::hard(0.5);
  cfg.restarts = 3;
  const auto r = rul::fit(MatrixXd{{1.5, -2.0}}, cfg);
  EXPECT_EQ(r.objective, 0.0);
  EXPECT_EQ(std::get<rul::CenterSet>(r.model).centers, (MatrixXd{{1.5, -2.0}}));
}

TEST(Fit, TrimmedOneMeanExample) {
  FitConfig cfg;
  cfg.weight = WeightFunction::hard(2.0 / 3.0);
  cfg.restarts = 10;
  cfg.max_iters = 50;
  const auto r = rul::fit(column({0.0, 0.1, 10.0}), cfg);
  EXPECT_NEAR(r.objective, 0.0025, 1e-12);
  EXPECT_NEAR(std::get<rul::CenterSet>(r.model).centers(0, 0), 0.05, 1e-12);
}

TEST(Fit, IdentityWeightFollowsPlainLloyd) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd x = rul::testing::random_points(rng, 60, 2, 3.0);
    const rul::KMeansFamily family{3, InitKind::Uniform};
    rul::RunOptions opt;
    opt.max_iters = 20;
    opt.tol = 0.0;
    const auto out = rul::run_restart(x, family, WeightFunction::identity(), opt, rul::substream(5, trial));
    auto init_rng = rul::substream(5, trial);
    MatrixXd c = family.initialize(x, init_rng).centers;
    for (std::size_t t = 0; t < out.iterations; ++t) c = rul::testing::plain_lloyd_step(x, c);
    EXPECT_LT((c - out.model.centers).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Fit, ObjectiveTraceIsNonIncreasing) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 60; ++trial) {
    FitConfig cfg;
    cfg.model = trial % 2 ? ModelKind::Psa : ModelKind::KMeans;
    const Eigen::Index d = 2 + trial % 4;
    cfg.k = 1 + trial % (d - 1);
    cfg.weight = rul::testing::random_weight(rng, trial % 3);
    cfg.restarts = 3;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const auto r = rul::fit(rul::testing::random_points(rng, 20 + trial, d), cfg);
    for (const auto& trace : r.objective_trace) {
      for (std::size_t t = 1; t < trace.size(); ++t) {
        EXPECT_LE(trace[t], trace[t - 1] + 1e-9 * std::max(1.0, trace[0]));
      }
    }
  }
}

TEST(Fit, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(97);
  const MatrixXd x = rul::testing::random_points(rng, 80, 3);
  for (ModelKind m : {ModelKind::KMeans, ModelKind::Psa}) {
    FitConfig cfg;
    cfg.model = m;
    cfg.k = 2;
    cfg.weight = WeightFunction::hard(0.7);
    cfg.restarts = 7;
    cfg.seed = 1234;
    const auto serial = rul::fit(x, cfg);
    cfg.threads = 4;
    expect_same(serial, rul::fit(x, cfg));
    expect_same(serial, rul::fit(x, cfg));
  }
}

TEST(Fit, BestRestartIsMinimumOfFinalObjectives) {
  std::mt19937_64 rng(101);
  const MatrixXd x = rul::testing::random_points(rng, 50, 2);
  FitConfig cfg;
  cfg.k = 4;
  cfg.weight = WeightFunction::hard(0.8);
  cfg.restarts = 12;
  const auto r = rul::fit(x, cfg);
  double best = INFINITY;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < r.objective_trace.size(); ++j) {
    if (r.objective_trace[j].back() < best) {
      best = r.objective_trace[j].back();
      arg = j;
    }
  }
  EXPECT_EQ(r.objective, best);
  EXPECT_EQ(r.best_restart, arg);
  EXPECT_EQ(r.iterations_used, r.iterations[arg]);
  // A restart depends only on its own substream, so running restarts in
  // reverse order reproduces each trace and the same best objective.
  double reversed_best = INFINITY;
  for (std::size_t j = cfg.restarts; j-- > 0;) {
    const auto one = rul::run_restart(x, rul::KMeansFamily{4, InitKind::Uniform}, cfg.weight, cfg.run_options(),
                                      rul::substream(cfg.seed, j));
    EXPECT_EQ(one.trace, r.objective_trace[j]);
    reversed_best = std::min(reversed_best, one.trace.back());
  }
  EXPECT_EQ(reversed_best, r.objective);
}

TEST(Fit, ConfigValidation) {
  const MatrixXd x = MatrixXd::Ones(5, 2);
  FitConfig cfg;
  cfg.k = 6;
  EXPECT_THROW(rul::fit(x, cfg), std::domain_error);
  cfg = {};
  cfg.model = ModelKind::Psa;
  cfg.k = 3;
  EXPECT_THROW(rul::fit(x, cfg), std::domain_error);
  cfg.k = 1;
  cfg.init = InitKind::KMeansPP;
  EXPECT_THROW(rul::fit(x, cfg), std::domain_error);
  cfg = {};
  cfg.init = InitKind::GaussianOrthonormal;
  EXPECT_THROW(rul::fit(x, cfg), std::domain_error);
  cfg = {};
  cfg.restarts = 0;
  EXPECT_THROW(rul::fit(x, cfg), std::domain_error);
}

TEST(Init, UniformDrawsDistinctRowsInDrawOrder) {
  const MatrixXd x = column({0, 1, 2, 3, 4});
  rul::Rng a(7), b(7);
  const auto s = rul::init_uniform(x, 5, a);
  std::set<double> seen(s.centers.data(), s.centers.data() + 5);
  EXPECT_EQ(seen.size(), 5u);
  EXPECT_EQ(rul::init_uniform(x, 5, b).centers, s.centers);
  EXPECT_THROW(rul::init_uniform(x, 6, a), std::domain_error);

  // k = 1 is a uniform draw over the rows.
  std::vector<int> hits(5, 0);
  rul::Rng rng(11);
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) ++hits[static_cast<std::size_t>(rul::init_uniform(x, 1, rng).centers(0, 0))];
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(draws), 0.2, 4 * std::sqrt(0.2 * 0.8 / draws));
}

TEST(Init, KMeansPlusPlusSecondCenterProbability) {
  const MatrixXd x = column({0, 1, 2, 10});
  // Exact probability that the outlier is the second center, by enumerating the first draw.
  double exact = 0.0;
  for (Eigen::Index first = 0; first < 4; ++first) {
    if (first == 3) continue;
    double total = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j) total += std::pow(x(j, 0) - x(first, 0), 2);
    exact += 0.25 * std::pow(10.0 - x(first, 0), 2) / total;
  }
  rul::Rng rng(13);
  const int draws = 40000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    const auto s = rul::init_kmeanspp(x, 2, rng);
    hits += s.centers(0, 0) != 10.0 && s.centers(1, 0) == 10.0;
  }
  EXPECT_NEAR(hits / static_cast<double>(draws), exact, 4 * std::sqrt(exact * (1 - exact) / draws));
  EXPECT_THROW(rul::init_kmeanspp(x, 5, rng), std::domain_error);
}

TEST(Init, KMeansPlusPlusDeterministicAndHandlesDuplicates) {
  const MatrixXd x = MatrixXd::Constant(4, 2, 3.0);
  rul::Rng a(17), b(17);
  const auto s = rul::init_kmeanspp(x, 3, a);
  EXPECT_EQ(s.centers, MatrixXd::Constant(3, 2, 3.0));
  std::mt19937_64 g(3);
  const MatrixXd y = rul::testing::random_points(g, 30, 3);
  rul::Rng c(19), d(19);
  EXPECT_EQ(rul::init_kmeanspp(y, 4, c).centers, rul::init_kmeanspp(y, 4, d).centers);
}

TEST(Init, OrthonormalBasis) {
  rul::Rng rng(23), twin(23);
  for (Eigen::Index d = 1; d <= 8; ++d) {
    for (Eigen::Index k = 1; k <= d; ++k) {
      const auto u = rul::init_orthonormal(d, k, rng);
      EXPECT_LT((u.basis.transpose() * u.basis - MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_EQ(rul::init_orthonormal(d, k, twin).basis, u.basis);
    }
  }
  EXPECT_THROW(rul::init_orthonormal(2, 3, rng), std::domain_error);
}
