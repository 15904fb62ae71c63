#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "rul/influence.hpp"
#include "rul/weights.hpp"
#include "test_support.hpp"

using rul::LossVector;
using rul::WeightFunction;

TEST(Weights, HardThresholdIsClosedAtZeta) {
  const auto w = WeightFunction::hard(0.5);
  EXPECT_DOUBLE_EQ(w(0.5), 2.0);
  EXPECT_DOUBLE_EQ(w(0.75), 0.0);
  EXPECT_DOUBLE_EQ(w(0.0), 2.0);
}

TEST(Weights, IdentityIsOne) {
  const auto w = WeightFunction::identity();
  EXPECT_DOUBLE_EQ(w(0.3), 1.0);
  EXPECT_DOUBLE_EQ(w.zeta(), 1.0);
}

TEST(Weights, PiecewiseInterpolates) {
  const auto w = WeightFunction::piecewise({{0.0, 2.0}, {0.5, 0.0}});
  EXPECT_DOUBLE_EQ(w(0.25), 1.0);
  EXPECT_DOUBLE_EQ(w(0.5), 0.0);
  EXPECT_DOUBLE_EQ(w(0.9), 0.0);
  EXPECT_DOUBLE_EQ(w.zeta(), 0.5);
  EXPECT_DOUBLE_EQ(w.lipschitz(), 4.0);
  EXPECT_DOUBLE_EQ(w.cumulative(1.0), 0.5);
}

TEST(Weights, DomainErrors) {
  const auto w = WeightFunction::hard(0.5);
  EXPECT_THROW(w(-0.1), std::domain_error);
  EXPECT_THROW(w(1.1), std::domain_error);
  EXPECT_THROW(w.cumulative(2.0), std::domain_error);
  EXPECT_THROW(WeightFunction::hard(0.0), std::domain_error);
  EXPECT_THROW(WeightFunction::hard(1.5), std::domain_error);
}

TEST(Weights, PiecewiseRejectsIncreasingSegments) {
  EXPECT_THROW(WeightFunction::piecewise({{0.0, 1.0}, {0.5, 2.0}}), std::domain_error);
  EXPECT_THROW(WeightFunction::piecewise({{0.0, 1.0}, {0.5, 0.5}, {0.5, 0.2}}), std::domain_error);
  EXPECT_THROW(WeightFunction::piecewise({{0.1, 1.0}}), std::domain_error);
  EXPECT_THROW(WeightFunction::piecewise({{0.0, 0.0}}), std::domain_error);
  EXPECT_THROW(WeightFunction::piecewise({{0.0, 1.0}, {1.2, 0.0}}), std::domain_error);
  EXPECT_THROW(WeightFunction::piecewise({{0.0, -1.0}}), std::domain_error);
}

TEST(Weights, CumulativeClosedForms) {
  EXPECT_DOUBLE_EQ(WeightFunction::hard(0.5).cumulative(1.0), 1.0);
  EXPECT_DOUBLE_EQ(WeightFunction::identity().cumulative(0.4), 0.4);
  EXPECT_DOUBLE_EQ(WeightFunction::hard(0.25).cumulative(0.1), 0.4);
}

TEST(Weights, CumulativeMatchesQuadrature) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto w = rul::testing::random_weight(rng, trial % 3);
    for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const double numeric = rul::testing::midpoint([&](double u) { return w(u); }, 0.0, t, 20000);
      // Midpoint error is O(h) only at the hard-threshold jump.
      EXPECT_NEAR(w.cumulative(t), numeric, 2e-4) << w.describe() << " t=" << t;
    }
  }
}

TEST(Weights, MonotoneAndZeroAfterCutoff) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = rul::testing::random_weight(rng, trial % 3);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_GE(w(a), w(b));
    EXPECT_GE(w(b), 0.0);
    const double beyond = w.zeta() + (1.0 - w.zeta()) * u(rng);
    if (beyond > w.zeta()) {
      EXPECT_EQ(w(beyond), 0.0);
    }
  }
}

// --- IF_max ----------------------------------------------------------------

namespace {

// Quadrature oracle: integrate W(F(r)) F(r) over [0, q] with F counted directly.
double if_max_quadrature(const WeightFunction& w, const std::vector<double>& losses) {
  const double n = static_cast<double>(losses.size());
  const double q = rul::empirical_quantile(LossVector(losses), w.zeta());
  auto integrand = [&](double r) {
    double c = 0.0;
    for (double l : losses) c += (l <= r);
    const double f = c / n;
    return w(f) * f;
  };
  return rul::testing::midpoint(integrand, 0.0, q, 200000);
}

}  // namespace

TEST(IfMax, Examples) {
  EXPECT_DOUBLE_EQ(rul::if_max(WeightFunction::identity(), LossVector{0.0, 1.0}), 0.5);
  EXPECT_DOUBLE_EQ(rul::if_max(WeightFunction::hard(0.5), LossVector{0.0, 1.0}), 0.0);
  // Quadrature oracle first, then the frozen value.
  const double oracle = if_max_quadrature(WeightFunction::hard(0.75), {0, 1, 2, 3});
  EXPECT_NEAR(oracle, 1.0, 1e-4);
  EXPECT_NEAR(rul::if_max(WeightFunction::hard(0.75), LossVector{0, 1, 2, 3}), 1.0, 1e-12);
}

TEST(IfMax, MatchesQuadratureOnRandomData) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = rul::testing::random_weight(rng, trial % 3);
    const auto l = rul::testing::random_losses(rng, 7, 3.0);
    EXPECT_NEAR(rul::if_max(w, LossVector(l)), if_max_quadrature(w, l), 1e-3) << w.describe();
  }
}

TEST(IfMax, NonnegativeAndZeroExactlyWhenQuantileIsMinimum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = rul::testing::random_weight(rng, trial % 3);
    auto l = rul::testing::random_losses(rng, 1 + trial % 9);
    if (trial % 4 == 0) std::fill(l.begin(), l.end(), 2.5);
    const LossVector lv(l);
    const double v = rul::if_max(w, lv);
    EXPECT_GE(v, 0.0);
    const bool at_min = rul::empirical_quantile(lv, w.zeta()) == *std::min_element(l.begin(), l.end());
    EXPECT_EQ(v == 0.0, at_min);
  }
}

TEST(IfMax, EmptyLossesRejected) { EXPECT_THROW(LossVector(std::vector<double>{}), std::domain_error); }

// --- influence of the hard threshold -------------------------------------

namespace {

std::vector<double> uniform_grid(int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = (i + 0.5) / n;
  return g;
}

}  // namespace

TEST(InfluenceHard, UniformExamples) {
  const LossVector grid(uniform_grid(1000));
  EXPECT_NEAR(rul::influence_hard(1.0, grid, 0.5), 0.25, 1e-3);
  EXPECT_NEAR(rul::influence_hard(0.0, grid, 0.5), -0.75, 1e-3);
}

TEST(InfluenceHard, DomainErrors) {
  const LossVector l{1, 2, 3};
  EXPECT_THROW(rul::influence_hard(1.0, l, 1.0), std::domain_error);
  EXPECT_THROW(rul::influence_hard(1.0, l, 0.0), std::domain_error);
}

TEST(InfluenceHard, BoundedAboveWhileUnweightedGrows) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const LossVector l(rul::testing::random_losses(rng, 20));
    const double zeta = 0.1 + 0.8 * u(rng);
    const double bound = rul::empirical_quantile(l, zeta) -
                         rul::hard_functional(rul::DiscreteMeasure::empirical(l), zeta);
    for (double r = 0.0; r < 1000.0; r = 2.0 * r + 0.1) {
      EXPECT_LE(rul::influence_hard(r, l, zeta), bound + 1e-12);
    }
  }
}

TEST(InfluenceHard, MatchesFiniteDifferenceAwayFromAtoms) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + trial % 20;
    const auto l = rul::testing::random_losses(rng, n);
    // zeta strictly inside a CDF jump
    const double zeta = (std::floor(u(rng) * (n - 1)) + 0.25 + 0.5 * u(rng)) / n;
    const LossVector lv(l);
    const double q = rul::empirical_quantile(lv, zeta);
    double r = 12.0 * u(rng);
    if (std::abs(r - q) < 1e-3) r += 0.01;
    std::vector<double> atoms = l, masses(n, 1.0 / n);
    const double base = rul::testing::variational_functional(atoms, masses, zeta);
    for (auto& m : masses) m *= (1.0 - t);
    atoms.push_back(r);
    masses.push_back(t);
    const double moved = rul::testing::variational_functional(atoms, masses, zeta);
    EXPECT_NEAR(rul::influence_hard(r, lv, zeta), (moved - base) / t, 10 * t) << "trial " << trial;
  }
}

TEST(InfluenceHard, AtQuantileAtomsWithinWidenedTolerance) {
  // zeta * n integer: the empirical quantile sits on a jump edge.
  const auto g = uniform_grid(200);
  const LossVector l(g);
  const double t = 1e-4;
  for (double r : {0.0, 0.1, 0.3, 0.8, 2.0}) {
    std::vector<double> atoms = g, masses(g.size(), 1.0 / g.size());
    const double base = rul::testing::variational_functional(atoms, masses, 0.5);
    for (auto& m : masses) m *= (1.0 - t);
    atoms.push_back(r);
    masses.push_back(t);
    const double moved = rul::testing::variational_functional(atoms, masses, 0.5);
    EXPECT_NEAR(rul::influence_hard(r, l, 0.5), (moved - base) / t, 0.05) << "r=" << r;
  }
}

TEST(HardFunctional, MatchesLStatisticWhenZetaNIsInteger) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + trial % 10;
    const std::size_t k = 1 + trial % n;
    const LossVector l(rul::testing::random_losses(rng, n));
    const double zeta = static_cast<double>(k) / n;
    EXPECT_NEAR(rul::hard_functional(rul::DiscreteMeasure::empirical(l), zeta),
                rul::lstat_objective(l, WeightFunction::hard(zeta)), 1e-12);
  }
}
