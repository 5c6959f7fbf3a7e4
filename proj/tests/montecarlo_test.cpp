// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "friedman/bounds.hpp"
#include "friedman/chisq.hpp"
#include "friedman/errors.hpp"
#include "friedman/montecarlo.hpp"

namespace {

using namespace friedman;

TEST(Sampler, ProducesValidRankings) {
  Philox4x32 rng({.seed = 1, .stream = 0});
  for (int i = 0; i < 200; ++i) {
    const auto m = sample_rank_matrix(5, 6, rng);  // the constructor validates rows
    EXPECT_EQ(m.trials(), 5);
    EXPECT_EQ(m.treatments(), 6);
  }
}

TEST(Sampler, UniformOverPermutations) {
  Philox4x32 rng({.seed = 2, .stream = 0});
  std::map<std::vector<int>, int> counts;
  constexpr int kDraws = 120000;
  for (int i = 0; i < kDraws; ++i) {
    const auto m = sample_rank_matrix(1, 3, rng);
    ++counts[m.data()];
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c, kDraws / 6, 6 * std::sqrt(kDraws * 5.0 / 36));
}

TEST(Simulation, IndependentOfThreadCount) {
  const std::uint64_t samples = 3 * kBlockSize + 17;
  const auto one = simulate_sum_of_squares(7, 4, samples, 99, 1);
  const auto three = simulate_sum_of_squares(7, 4, samples, 99, 3);
  EXPECT_EQ(one, three);
  EXPECT_NE(one, simulate_sum_of_squares(7, 4, samples, 100, 1));
  const auto a = estimate_kolmogorov(30, 3, 20000, 5, 1);
  const auto b = estimate_kolmogorov(30, 3, 20000, 5, 4);
  EXPECT_EQ(a.value, b.value);
}

TEST(Distances, PointMass) {
  const DiscreteLaw at_one{{1.0}, {1.0}};
  const double c = chisq_cdf(chisq_law(1), 1.0);
  EXPECT_NEAR(kolmogorov_distance(at_one, 1), std::max(c, 1.0 - c), 1e-14);
  // E|Y - 2| for Y exponential with mean 2 is 4/e.
  const DiscreteLaw at_two{{2.0}, {1.0}};
  EXPECT_NEAR(wasserstein_distance(at_two, 2), 4.0 / std::exp(1.0), 1e-9);
}

TEST(Distances, DkwWidth) {
  EXPECT_NEAR(dkw_half_width(1'000'000), 0.0016276, 1e-7);
  EXPECT_THROW(dkw_half_width(0), DomainError);
}

TEST(Distances, ExactLawHasTheRightMass) {
  const auto law = law_from_exact(exact_statistic_law(3, 4));
  EXPECT_NEAR(std::accumulate(law.probabilities.begin(), law.probabilities.end(), 0.0), 1.0, 1e-14);
  EXPECT_TRUE(std::is_sorted(law.values.begin(), law.values.end()));
}

TEST(Distances, MonteCarloCoversExact) {
  for (auto [r, n] : {std::pair{2, 10}, {3, 4}, {4, 3}}) {
    const auto exact = exact_kolmogorov(n, r);
    const auto mc = estimate_kolmogorov(n, r, 400000, 77);
    EXPECT_EQ(exact.method, "exact-enumeration");
    EXPECT_EQ(mc.method, "monte-carlo");
    EXPECT_LE(std::abs(exact.value - mc.value), mc.half_width) << r << ' ' << n;
    const auto exact_w = exact_wasserstein(n, r);
    const auto mc_w = estimate_wasserstein(n, r, 400000, 77);
    EXPECT_LE(std::abs(exact_w.value - mc_w.value), mc_w.half_width) << r << ' ' << n;
  }
}

TEST(SmoothGap, SecondMomentDeficitIsExact) {
  for (int n : {2, 4, 8}) EXPECT_NEAR(exact_smooth_gap(n, 3, square_function()), 4.0 / n, 1e-10);
  for (int n : {1, 3, 5}) EXPECT_NEAR(exact_smooth_gap(n, 2, square_function()), 2.0 / n, 1e-10);
  EXPECT_NEAR(exact_smooth_gap(5, 3, identity_function()), 0.0, 1e-12);
}

TEST(SmoothGap, MonteCarloCoversExact) {
  const auto h = cosine(0.5);
  const double exact = exact_smooth_gap(4, 3, h);
  const auto mc = estimate_smooth_gap(4, 3, h, 400000, 8);
  EXPECT_LE(std::abs(mc.value - exact), mc.half_width);
}

TEST(Rate, ExactRowsForTheSquare) {
  const auto rows = rate_experiment(3, {2, 4, 8, 16}, square_function(), RateMode::automatic, 100000, 1);
  ASSERT_EQ(rows.size(), 4u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i].method, "exact-enumeration");
    EXPECT_NEAR(rows[i].scaled_gap, 4.0, 1e-9);
  }
  // 6^16 configurations is past the enumeration budget.
  EXPECT_EQ(rows[3].method, "monte-carlo");
  EXPECT_NEAR(rows[3].scaled_gap, 4.0, 16 * rows[3].half_width);
  for (const auto& row : rows) EXPECT_TRUE(row.within_bound);
  EXPECT_FALSE(rows[0].bounds.has_value());  // unbounded derivative
}

TEST(Rate, CosineRowsCarryBounds) {
  const auto rows = rate_experiment(3, {2, 3}, cosine(1.0), RateMode::exact, 0, 1);
  for (const auto& row : rows) {
    ASSERT_TRUE(row.bounds.has_value());
    EXPECT_LE(row.gap, row.bounds->selected);
    EXPECT_TRUE(row.within_bound);
  }
  EXPECT_THROW(rate_experiment(8, {3}, cosine(1.0), RateMode::exact, 0, 1), BudgetError);
}

}  // namespace
