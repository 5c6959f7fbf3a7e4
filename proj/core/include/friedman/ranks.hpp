// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace friedman {

//! n trials by r treatments; every row is a permutation of 1..r.
class RankMatrix {
 public:
  RankMatrix(int trials, int treatments, std::vector<int> ranks);
  static RankMatrix from_rows(const std::vector<std::vector<int>>& rows);

  [[nodiscard]] int trials() const noexcept { return trials_; }
  [[nodiscard]] int treatments() const noexcept { return treatments_; }
  [[nodiscard]] int operator()(int trial, int treatment) const {
    return ranks_[static_cast<std::size_t>(trial) * treatments_ + treatment];
  }
  [[nodiscard]] std::span<const int> row(int trial) const {
    return {ranks_.data() + static_cast<std::size_t>(trial) * treatments_,
            static_cast<std::size_t>(treatments_)};
  }
  [[nodiscard]] const std::vector<int>& data() const noexcept { return ranks_; }

  friend bool operator==(const RankMatrix&, const RankMatrix&) = default;

 private:
  int trials_;
  int treatments_;
  std::vector<int> ranks_;
};

//! Ranks shifted by the midrank (r+1)/2 and stored doubled so every entry is
//! an integer: twice(i, j) = 2 * rank - (r + 1).
class CenteredRanks {
 public:
  explicit CenteredRanks(const RankMatrix& ranks);

  [[nodiscard]] int trials() const noexcept { return trials_; }
  [[nodiscard]] int treatments() const noexcept { return treatments_; }
  [[nodiscard]] int twice(int trial, int treatment) const {
    return twice_[static_cast<std::size_t>(trial) * treatments_ + treatment];
  }
  [[nodiscard]] double operator()(int trial, int treatment) const {
    return 0.5 * twice(trial, treatment);
  }
  [[nodiscard]] std::span<const int> twice_row(int trial) const {
    return {twice_.data() + static_cast<std::size_t>(trial) * treatments_,
            static_cast<std::size_t>(treatments_)};
  }

 private:
  int trials_;
  int treatments_;
  std::vector<int> twice_;
};

//! Standardised column sums and the Friedman statistic.
struct ScoreVector {
  std::vector<double> s;
  //! Column sums of the doubled centered ranks; they sum to zero exactly.
  std::vector<std::int64_t> twice_column_sums;
  double f_r = 0.0;
};

//! Covariance of the score vector under the null; independent of n.
struct CovarianceMatrix {
  int treatments = 0;
  std::vector<double> sigma;
  [[nodiscard]] double operator()(int j, int k) const {
    return sigma[static_cast<std::size_t>(j) * treatments + k];
  }
};

//! Scores are ranked within each row, ascending. Ties and NaN/inf are rejected.
RankMatrix ranks_from_scores(const std::vector<std::vector<double>>& scores);

CenteredRanks center(const RankMatrix& ranks);
ScoreVector score_vector(const CenteredRanks& centered);
ScoreVector score_vector(const RankMatrix& ranks);
CovarianceMatrix theoretical_covariance(int treatments);

//! sqrt(12 / (r (r + 1) n)), the factor taking rank column sums to scores.
double score_scale(int trials, int treatments);

//! Statistic from the sum of squared doubled column sums: 3 * sum / (r (r + 1) n).
double statistic_from_twice_sums(std::int64_t sum_of_squares, int trials, int treatments);

}  // namespace friedman
