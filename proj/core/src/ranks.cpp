// SPDX-License-Identifier: Apache-2.0
#include "friedman/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "friedman/errors.hpp"

namespace friedman {

namespace {

void require_shape(int trials, int treatments) {
  if (trials < 1) throw DomainError("need at least one trial, got " + std::to_string(trials));
  if (treatments < 2)
    throw DomainError("need at least two treatments, got " + std::to_string(treatments));
}

}  // namespace

RankMatrix::RankMatrix(int trials, int treatments, std::vector<int> ranks)
    : trials_(trials), treatments_(treatments), ranks_(std::move(ranks)) {
  require_shape(trials, treatments);
  if (ranks_.size() != static_cast<std::size_t>(trials) * treatments)
    throw DomainError("rank data has " + std::to_string(ranks_.size()) + " entries, expected " +
                      std::to_string(static_cast<std::size_t>(trials) * treatments));
  std::vector<char> seen(static_cast<std::size_t>(treatments) + 1);
  for (int i = 0; i < trials; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int rank : row(i)) {
      if (rank < 1 || rank > treatments)
        throw DomainError("row " + std::to_string(i + 1) + ": rank " + std::to_string(rank) +
                          " outside 1.." + std::to_string(treatments));
      if (seen[rank]++) throw TieError(i + 1, "rank " + std::to_string(rank) + " repeated");
    }
  }
}

RankMatrix RankMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw DomainError("need at least one trial, got 0");
  const std::size_t r = rows.front().size();
  std::vector<int> flat;
  flat.reserve(rows.size() * r);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != r)
      throw DomainError("row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(r));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return {static_cast<int>(rows.size()), static_cast<int>(r), std::move(flat)};
}

CenteredRanks::CenteredRanks(const RankMatrix& ranks)
    : trials_(ranks.trials()), treatments_(ranks.treatments()), twice_(ranks.data().size()) {
  const int shift = treatments_ + 1;
  std::transform(ranks.data().begin(), ranks.data().end(), twice_.begin(),
                 [shift](int rank) { return 2 * rank - shift; });
}

RankMatrix ranks_from_scores(const std::vector<std::vector<double>>& scores) {
  if (scores.empty()) throw DomainError("need at least one trial, got 0");
  const std::size_t r = scores.front().size();
  require_shape(static_cast<int>(scores.size()), static_cast<int>(r));
  std::vector<int> flat(scores.size() * r);
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto& row = scores[i];
    if (row.size() != r)
      throw DomainError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(r));
    for (std::size_t j = 0; j < r; ++j)
      if (!std::isfinite(row[j]))
        throw NonFiniteError(i + 1, "score in column " + std::to_string(j + 1) + " is not finite");
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    for (std::size_t k = 1; k < r; ++k)
      if (row[order[k]] == row[order[k - 1]])
        throw TieError(i + 1, "columns " + std::to_string(std::min(order[k], order[k - 1]) + 1) +
                                  " and " + std::to_string(std::max(order[k], order[k - 1]) + 1) +
                                  " are tied");
    for (std::size_t k = 0; k < r; ++k) flat[i * r + order[k]] = static_cast<int>(k + 1);
  }
  return {static_cast<int>(scores.size()), static_cast<int>(r), std::move(flat)};
}

CenteredRanks center(const RankMatrix& ranks) { return CenteredRanks(ranks); }

double score_scale(int trials, int treatments) {
  require_shape(trials, treatments);
  return std::sqrt(12.0 / (static_cast<double>(treatments) * (treatments + 1) * trials));
}

double statistic_from_twice_sums(std::int64_t sum_of_squares, int trials, int treatments) {
  return 3.0 * static_cast<double>(sum_of_squares) /
         (static_cast<double>(treatments) * (treatments + 1) * trials);
}

ScoreVector score_vector(const CenteredRanks& centered) {
  const int n = centered.trials();
  const int r = centered.treatments();
  ScoreVector out;
  out.twice_column_sums.assign(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < n; ++i) {
    auto row = centered.twice_row(i);
    for (int j = 0; j < r; ++j) out.twice_column_sums[j] += row[j];
  }
  // S_j = scale * C_j / 2 with C_j the doubled column sum.
  const double half_scale = 0.5 * score_scale(n, r);
  std::int64_t sum_sq = 0;
  out.s.resize(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    const std::int64_t c = out.twice_column_sums[j];
    out.s[j] = half_scale * static_cast<double>(c);
    sum_sq += c * c;
  }
  out.f_r = statistic_from_twice_sums(sum_sq, n, r);
  return out;
}

ScoreVector score_vector(const RankMatrix& ranks) { return score_vector(center(ranks)); }

CovarianceMatrix theoretical_covariance(int treatments) {
  if (treatments < 2)
    throw DomainError("need at least two treatments, got " + std::to_string(treatments));
  CovarianceMatrix cov{treatments, std::vector<double>(static_cast<std::size_t>(treatments) * treatments)};
  const double off = -1.0 / treatments;
  for (int j = 0; j < treatments; ++j)
    for (int k = 0; k < treatments; ++k)
      cov.sigma[static_cast<std::size_t>(j) * treatments + k] = (j == k) ? 1.0 + off : off;
  return cov;
}

}  // namespace friedman
