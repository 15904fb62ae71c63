#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "rul/lstat.hpp"
#include "test_support.hpp"

using rul::LossVector;
using rul::Ranking;
using rul::WeightFunction;

namespace {
std::vector<std::size_t> ranks_of(const Ranking& r) { return {r.ranks().begin(), r.ranks().end()}; }
}  // namespace

TEST(RankLosses, AscendingAndStable) {
  EXPECT_EQ(ranks_of(rul::rank_losses(LossVector{3, 1, 2})), (std::vector<std::size_t>{3, 1, 2}));
  EXPECT_EQ(ranks_of(rul::rank_losses(LossVector{5, 5, 1})), (std::vector<std::size_t>{2, 3, 1}));
  EXPECT_EQ(ranks_of(rul::rank_losses(LossVector{7})), (std::vector<std::size_t>{1}));
}

TEST(RankLosses, RejectsInvalidLosses) {
  EXPECT_THROW(LossVector({1.0, -0.5}), std::domain_error);
  EXPECT_THROW(LossVector({1.0, NAN}), std::domain_error);
  EXPECT_THROW(Ranking({1, 1, 2}), std::domain_error);
  EXPECT_THROW(Ranking({0, 1}), std::domain_error);
}

TEST(PhiPerm, Examples) {
  const auto hard = WeightFunction::hard(0.5);
  EXPECT_DOUBLE_EQ(rul::phi_perm(LossVector{1, 2, 3, 4}, hard, Ranking::identity(4)), 1.5);
  EXPECT_DOUBLE_EQ(rul::phi_perm(LossVector{4, 3, 2, 1}, hard, Ranking::identity(4)), 3.5);
  EXPECT_DOUBLE_EQ(rul::phi_perm(LossVector{1, 2, 3, 6}, WeightFunction::identity(), Ranking({4, 2, 1, 3})), 3.0);
}

TEST(PhiPerm, LengthMismatch) {
  EXPECT_THROW(rul::phi_perm(LossVector{1, 2}, WeightFunction::identity(), Ranking::identity(3)), std::domain_error);
}

TEST(LStatObjective, Examples) {
  EXPECT_DOUBLE_EQ(rul::lstat_objective(LossVector{1, 2, 3, 4}, WeightFunction::hard(0.5)), 1.5);
  EXPECT_DOUBLE_EQ(rul::lstat_objective(LossVector{2.5, 2.5, 2.5}, WeightFunction::hard(1.0 / 3.0)), 2.5);
  EXPECT_DOUBLE_EQ(rul::lstat_objective(LossVector{2.5, 2.5, 2.5}, WeightFunction::identity()), 2.5);
  EXPECT_DOUBLE_EQ(rul::lstat_objective(LossVector{1, 2, 3, 4}, WeightFunction::identity()), 2.5);
}

TEST(LStatObjective, NonIntegerZetaNTrimsToFloor) {
  // zeta*n = 2.5: ranks 1 and 2 get weight 1/zeta, rank 3 (3/5 > 0.5) gets 0.
  const double v = rul::lstat_objective(LossVector{1, 2, 3, 4, 5}, WeightFunction::hard(0.5));
  EXPECT_NEAR(v, (1.0 + 2.0) * 2.0 / 5.0, 1e-15);
}

TEST(LStatObjective, HardThresholdTruncationAgainstSortOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 30;
    const std::size_t k = 1 + (trial * 7) % n;
    const auto l = rul::testing::random_losses(rng, n);
    const double v = rul::lstat_objective(LossVector(l), WeightFunction::hard(static_cast<double>(k) / n));
    EXPECT_NEAR(v, rul::testing::trimmed_mean_oracle(l, k), 1e-12 * (1 + v));
  }
}

TEST(LStatObjective, PermutationOptimalityAgainstAllPermutations) {
  // Independent route: enumerate Sym_n and take the minimum of phi.
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    auto l = rul::testing::random_losses(rng, n);
    if (trial % 5 == 0 && n > 1) l[1] = l[0];
    const auto w = rul::testing::random_weight(rng, trial % 3);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{1});
    double best = INFINITY;
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w(static_cast<double>(p[i]) / n) * l[i];
      best = std::min(best, s / n);
    } while (std::next_permutation(p.begin(), p.end()));
    EXPECT_NEAR(rul::lstat_objective(LossVector(l), w), best, 1e-12 * (1 + best));
  }
}

TEST(LStatObjective, ScaleEquivarianceAndMonotonicity) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = rul::testing::random_weight(rng, trial % 3);
    const auto l = rul::testing::random_losses(rng, 1 + trial % 25);
    const double alpha = u(rng);
    std::vector<double> scaled = l, bumped = l;
    for (auto& x : scaled) x *= alpha;
    for (auto& x : bumped) x += u(rng);
    const double base = rul::lstat_objective(LossVector(l), w);
    EXPECT_NEAR(rul::lstat_objective(LossVector(scaled), w), alpha * base, 1e-12 * (1 + alpha * base));
    EXPECT_GE(rul::lstat_objective(LossVector(bumped), w), base - 1e-12 * (1 + base));
  }
}

TEST(LStatObjective, TieSwapsAreBitIdentical) {
  const LossVector l{2, 1, 2, 2, 3, 1};
  const auto w = WeightFunction::piecewise({{0.0, 3.0}, {0.4, 1.0}, {0.9, 0.0}});
  const double opt = rul::lstat_objective(l, w);
  // Ranks permuted within the tie groups {1,5} and {0,2,3}.
  EXPECT_EQ(rul::phi_perm(l, w, Ranking({5, 2, 3, 4, 6, 1})), opt);
  EXPECT_EQ(rul::phi_perm(l, w, Ranking({4, 1, 5, 3, 6, 2})), opt);
}

TEST(EmpiricalQuantile, Examples) {
  EXPECT_DOUBLE_EQ(rul::empirical_quantile(LossVector{1, 2, 3, 4}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(rul::empirical_quantile(LossVector{1, 2, 3, 4}, 0.51), 3.0);
  EXPECT_DOUBLE_EQ(rul::empirical_quantile(LossVector{5}, 1.0), 5.0);
  EXPECT_THROW(rul::empirical_quantile(LossVector{1, 2}, 0.0), std::domain_error);
  EXPECT_THROW(rul::empirical_quantile(LossVector{1, 2}, 1.2), std::domain_error);
}

TEST(EmpiricalQuantile, MatchesDefinition) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 17;
    auto l = rul::testing::random_losses(rng, n);
    if (n > 2) l[2] = l[0];
    const double zeta = trial % 3 == 0 ? static_cast<double>(1 + trial % n) / n : std::max(1e-9, u(rng));
    double expected = INFINITY;
    for (double r : l) {
      double c = 0;
      for (double x : l) c += (x <= r);
      if (c / n >= zeta) expected = std::min(expected, r);
    }
    EXPECT_EQ(rul::empirical_quantile(LossVector(l), zeta), expected);
  }
}

TEST(VariationalHard, Examples) {
  EXPECT_DOUBLE_EQ(rul::variational_hard(LossVector{1, 2, 3, 4}, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(rul::variational_hard(LossVector{4, 4, 4}, 0.3), 4.0);
}

TEST(VariationalHard, AgreesWithObjectiveOnDistinctValues) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 40;
    const std::size_t k = 1 + (trial * 13) % (n - 1);
    const LossVector l(rul::testing::random_losses(rng, n));
    const double zeta = static_cast<double>(k) / n;
    EXPECT_NEAR(rul::variational_hard(l, zeta), rul::lstat_objective(l, WeightFunction::hard(zeta)), 1e-12);
  }
}
