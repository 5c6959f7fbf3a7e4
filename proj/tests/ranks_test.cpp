// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "friedman/csv.hpp"
#include "friedman/errors.hpp"
#include "friedman/montecarlo.hpp"
#include "friedman/ranks.hpp"
#include "friedman/rng.hpp"

namespace {

using namespace friedman;

// Textbook form: 12 / (n r (r + 1)) sum R_j^2 - 3 n (r + 1), R_j the rank sums.
double classical_friedman(const RankMatrix& m) {
  const double n = m.trials(), r = m.treatments();
  double sum_sq = 0.0;
  for (int j = 0; j < m.treatments(); ++j) {
    double rj = 0.0;
    for (int i = 0; i < m.trials(); ++i) rj += m(i, j);
    sum_sq += rj * rj;
  }
  return 12.0 / (n * r * (r + 1)) * sum_sq - 3.0 * n * (r + 1);
}

TEST(RankMatrix, RejectsOutOfRangeAndRepeatedRanks) {
  EXPECT_THROW(RankMatrix::from_rows({{1, 2, 4}}), DomainError);
  EXPECT_THROW(RankMatrix::from_rows({{0, 1}}), DomainError);
  try {
    RankMatrix::from_rows({{1, 2, 3}, {2, 2, 1}});
    FAIL() << "expected TieError";
  } catch (const TieError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
  EXPECT_THROW(RankMatrix::from_rows({{1}}), DomainError);
  EXPECT_THROW(RankMatrix::from_rows({{1, 2}, {1, 2, 3}}), DomainError);
}

TEST(Statistic, HandExamples) {
  EXPECT_DOUBLE_EQ(score_vector(RankMatrix::from_rows({{1, 2, 3}, {1, 2, 3}})).f_r, 4.0);
  EXPECT_DOUBLE_EQ(score_vector(RankMatrix::from_rows({{1, 2}, {2, 1}})).f_r, 0.0);
  // n = 1: F = 3 sum (2 rank - r - 1)^2 / (r (r + 1)) = r - 1 for every permutation.
  for (int r = 2; r <= 7; ++r) {
    std::vector<int> row(r);
    std::iota(row.begin(), row.end(), 1);
    EXPECT_NEAR(score_vector(RankMatrix(1, r, row)).f_r, r - 1.0, 1e-12) << r;
  }
}

TEST(Statistic, MatchesClassicalFormulaOnRandomMatrices) {
  Philox4x32 rng({.seed = 11, .stream = 0});
  for (int trial = 0; trial < 500; ++trial) {
    const int r = 2 + static_cast<int>(rng.uniform_below(9));
    const int n = 1 + static_cast<int>(rng.uniform_below(40));
    const auto m = sample_rank_matrix(n, r, rng);
    const auto sv = score_vector(m);
    EXPECT_NEAR(sv.f_r, classical_friedman(m), 1e-9 * std::max(1.0, sv.f_r));
    // Doubled column sums cancel exactly and S is the scaled column sum.
    EXPECT_EQ(std::accumulate(sv.twice_column_sums.begin(), sv.twice_column_sums.end(), std::int64_t{0}), 0);
    double s2 = 0.0;
    for (double s : sv.s) s2 += s * s;
    EXPECT_NEAR(s2, sv.f_r, 1e-9 * std::max(1.0, sv.f_r));
  }
}

TEST(Statistic, InvariantUnderTrialAndTreatmentPermutation) {
  Philox4x32 rng({.seed = 12, .stream = 0});
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 2 + static_cast<int>(rng.uniform_below(6));
    const int n = 1 + static_cast<int>(rng.uniform_below(10));
    const auto m = sample_rank_matrix(n, r, rng);
    std::vector<int> col(r), rows(n);
    std::iota(col.begin(), col.end(), 0);
    std::iota(rows.begin(), rows.end(), 0);
    for (int k = r - 1; k > 0; --k) std::swap(col[k], col[rng.uniform_below(k + 1)]);
    for (int k = n - 1; k > 0; --k) std::swap(rows[k], rows[rng.uniform_below(k + 1)]);
    std::vector<int> shuffled;
    for (int i : rows)
      for (int j : col) shuffled.push_back(m(i, j));
    EXPECT_DOUBLE_EQ(score_vector(m).f_r, score_vector(RankMatrix(n, r, shuffled)).f_r);
  }
}

TEST(Scores, RankWithinRowsAscending) {
  const auto m = ranks_from_scores({{0.3, -1.0, 2.5}, {10.0, 20.0, 5.0}});
  EXPECT_EQ(m, RankMatrix::from_rows({{2, 1, 3}, {2, 3, 1}}));
  EXPECT_THROW(ranks_from_scores({{1.0, 1.0}}), TieError);
  EXPECT_THROW(ranks_from_scores({{1.0, std::nan("")}}), NonFiniteError);
}

TEST(Scores, MonotoneTransformLeavesRanksUnchanged) {
  Philox4x32 rng({.seed = 13, .stream = 0});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> scores(5, std::vector<double>(4));
    auto mapped = scores;
    for (std::size_t i = 0; i < scores.size(); ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        scores[i][j] = rng.uniform01() * 10.0 - 5.0;
        mapped[i][j] = std::exp(scores[i][j]) + 3.0;
      }
    EXPECT_EQ(ranks_from_scores(scores), ranks_from_scores(mapped));
  }
}

TEST(Covariance, Entries) {
  for (int r = 2; r <= 8; ++r) {
    const auto sigma = theoretical_covariance(r);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) EXPECT_DOUBLE_EQ(sigma(j, k), j == k ? (r - 1.0) / r : -1.0 / r);
  }
}

TEST(Csv, ScoresWithHeader) {
  std::istringstream in("a,b,c\n0.1, 0.5 ,0.9\n\n3,7,-11\n");
  EXPECT_EQ(read_rank_csv(in, InputFormat::scores), RankMatrix::from_rows({{1, 2, 3}, {2, 3, 1}}));
}

TEST(Csv, RanksFormat) {
  std::istringstream in("1,2,3\n3,2,1\n");
  EXPECT_EQ(read_rank_csv(in, InputFormat::ranks), RankMatrix::from_rows({{1, 2, 3}, {3, 2, 1}}));
}

TEST(Csv, ErrorsCarryFileLineNumbers) {
  {
    std::istringstream in("x,y\n1,2\n\n5,5\n");
    try {
      read_rank_csv(in, InputFormat::scores);
      FAIL();
    } catch (const TieError& e) {
      EXPECT_EQ(e.row(), 4u);
    }
  }
  {
    std::istringstream in("1,2,3\n1,2\n");
    try {
      read_rank_csv(in, InputFormat::scores);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u);
    }
  }
  {
    std::istringstream in("1,2\n3,abc\n");
    EXPECT_THROW(read_rank_csv(in, InputFormat::scores), ParseError);
  }
  {
    std::istringstream in("1,nan\n");
    EXPECT_THROW(read_rank_csv(in, InputFormat::scores), NonFiniteError);
  }
  {
    std::istringstream in("1,2\n1,1.5\n");
    EXPECT_THROW(read_rank_csv(in, InputFormat::ranks), ParseError);
  }
  {
    std::istringstream in("");
    EXPECT_THROW(read_rank_csv(in, InputFormat::scores), ParseError);
  }
  EXPECT_THROW(read_rank_csv(std::filesystem::path("/nonexistent/file.csv"), InputFormat::scores), IoError);
  EXPECT_THROW(parse_input_format("matrix"), DomainError);
}

}  // namespace
