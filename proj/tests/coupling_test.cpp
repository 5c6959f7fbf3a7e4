// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "friedman/coupling.hpp"
#include "friedman/errors.hpp"
#include "friedman/montecarlo.hpp"

namespace {

using namespace friedman;

const CheckEntry* find(const CheckReport& rep, std::string_view prefix) {
  for (const auto& e : rep.entries())
    if (e.identity.starts_with(prefix)) return &e;
  return nullptr;
}

TEST(SwapPair, MovesOnlyTheTwoColumns) {
  const auto m = RankMatrix::from_rows({{1, 2, 3, 4}, {4, 1, 3, 2}, {2, 4, 1, 3}});
  const auto pair = swap_pair(center(m), 1, 0, 3);
  // Trial 1 has doubled ranks (3, -3, 1, -1); swapping columns 0 and 3 moves 4 between them.
  EXPECT_EQ(pair.swapped.twice_column_sums[0] - pair.base.twice_column_sums[0], -4);
  EXPECT_EQ(pair.swapped.twice_column_sums[3] - pair.base.twice_column_sums[3], 4);
  EXPECT_EQ(pair.swapped.twice_column_sums[1], pair.base.twice_column_sums[1]);
  EXPECT_EQ(pair.swapped.twice_column_sums[2], pair.base.twice_column_sums[2]);
  // The swapped configuration is a valid ranking with the same statistic formula.
  auto rows = std::vector<std::vector<int>>{{1, 2, 3, 4}, {2, 1, 3, 4}, {2, 4, 1, 3}};
  EXPECT_DOUBLE_EQ(pair.swapped.f_r, score_vector(RankMatrix::from_rows(rows)).f_r);

  const auto same = swap_pair(center(m), 2, 1, 1);
  EXPECT_EQ(same.swapped.twice_column_sums, same.base.twice_column_sums);
  EXPECT_THROW(swap_pair(center(m), 3, 0, 1), DomainError);
}

TEST(SamplePair, Reproducible) {
  Philox4x32 a({.seed = 3, .stream = 0}), b({.seed = 3, .stream = 0});
  const auto m = RankMatrix::from_rows({{1, 2, 3}, {3, 1, 2}});
  for (int i = 0; i < 50; ++i) {
    const auto x = sample_pair(m, a), y = sample_pair(m, b);
    EXPECT_EQ(x.trial, y.trial);
    EXPECT_EQ(x.first, y.first);
    EXPECT_EQ(x.second, y.second);
    EXPECT_EQ(x.swapped.twice_column_sums, y.swapped.twice_column_sums);
  }
}

TEST(CouplingSuite, RegressionAndCovarianceExact) {
  for (int r : {2, 3, 4})
    for (int n : {1, 2, 3}) {
      EXPECT_TRUE(verify_regression(r, n).passed()) << r << ' ' << n;
      EXPECT_TRUE(verify_increment_moments(r, n).passed()) << r << ' ' << n;
      EXPECT_TRUE(verify_exchangeability(r, n).passed()) << r << ' ' << n;
    }
}

TEST(CouplingSuite, IncrementProductsFollowTheSignRule) {
  for (int r : {2, 3, 4})
    for (int n : {1, 2}) {
      const auto rep = verify_triple_structure(r, n);
      for (const char* id : {"quartic increment product vanishes", "quartic increment product = c^4 delta^4 sgn",
                             "cubic increment product vanishes", "cubic increment product = c^3 delta^3 sgn"}) {
        const auto* e = find(rep, id);
        ASSERT_NE(e, nullptr) << id;
        EXPECT_EQ(e->status, CheckStatus::pass) << id << " r=" << r << " n=" << n;
      }
    }
}

TEST(CouplingSuite, PatternListsWithoutThreeOneSplitsDisagree) {
  // With delta the increment of treatment K, a product over indices taking the
  // value K a times and L b times equals delta^(a+b) (-1)^b. Lists that set the
  // (3, 1) splits to zero, or give the all-L cubic a + sign, disagree on every
  // draw with K != L.
  const auto rep = verify_triple_structure(3, 1);
  const auto* quartic = find(rep, "quartic increment product = c^4 delta^4 (all equal");
  const auto* cubic = find(rep, "cubic increment product = c^3 delta^3 (+1 all equal");
  ASSERT_NE(quartic, nullptr);
  ASSERT_NE(cubic, nullptr);
  EXPECT_EQ(quartic->status, CheckStatus::fail);
  EXPECT_EQ(cubic->status, CheckStatus::fail);
  // 1 trial x 9 (K, L) draws per configuration, 6 configurations; only K = L agrees.
  EXPECT_EQ(quartic->rhs, "54");
  EXPECT_EQ(quartic->lhs, "18");
}

TEST(CouplingSuite, PairIdentity) {
  for (int r : {2, 3})
    for (int n : {1, 2}) EXPECT_TRUE(verify_pair_identity(r, n).passed()) << r << ' ' << n;
}

TEST(CouplingSuite, MonteCarloIncrementsAgreeWithRegression) {
  EXPECT_TRUE(verify_increment_moments_mc(4, 20, 200000, 17).passed());
}

}  // namespace
