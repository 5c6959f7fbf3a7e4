// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "friedman/parallel.hpp"

namespace friedman {

//! Largest number of configurations (or configuration-draw pairs) that an
//! exhaustive routine will visit before refusing with BudgetError.
inline constexpr std::uint64_t kEnumerationBudget = 20'000'000;

//! (r!)^n, saturating at UINT64_MAX.
std::uint64_t configuration_count(int treatments, int trials);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

//! Throws BudgetError when work > budget.
void require_budget(std::uint64_t work, std::string_view what,
                    std::uint64_t budget = kEnumerationBudget);

//! All r! permutations in lexicographic order, as doubled centered ranks.
std::vector<std::vector<int>> doubled_permutations(int treatments);

//! One rank configuration seen during enumeration.
struct ConfigurationView {
  int treatments;
  int trials;
  //! Doubled centered column sums.
  std::span<const int> column_sums;
  //! rows[i] points at the doubled centered ranks of trial i.
  std::span<const int* const> rows;
};

namespace detail {

template <class Acc, class Visit>
void enumerate_from(const std::vector<std::vector<int>>& perms, int trial,
                    std::vector<int>& sums, std::vector<const int*>& rows, Acc& acc,
                    Visit& visit) {
  const int r = static_cast<int>(sums.size());
  const int n = static_cast<int>(rows.size());
  if (trial == n) {
    visit(acc, ConfigurationView{r, n, sums, rows});
    return;
  }
  for (const auto& p : perms) {
    for (int j = 0; j < r; ++j) sums[j] += p[j];
    rows[trial] = p.data();
    enumerate_from(perms, trial + 1, sums, rows, acc, visit);
    for (int j = 0; j < r; ++j) sums[j] -= p[j];
  }
}

}  // namespace detail

//! Visits all (r!)^n configurations of n independent uniform permutations.
//! Work is partitioned by the first trial's permutation; each partition fills
//! its own accumulator and partitions are merged in a fixed order with +=, so
//! the result is independent of the thread count.
template <class Acc, class Visit>
Acc reduce_configurations(int treatments, int trials, Visit visit, unsigned threads = 0,
                          std::uint64_t work_per_configuration = 1) {
  require_budget(saturating_mul(configuration_count(treatments, trials), work_per_configuration),
                 "configuration enumeration");
  const auto perms = doubled_permutations(treatments);
  std::vector<Acc> partial(perms.size());
  parallel_for(perms.size(), threads, [&](std::size_t first) {
    std::vector<int> sums(perms[first]);
    std::vector<const int*> rows(static_cast<std::size_t>(trials), nullptr);
    rows[0] = perms[first].data();
    detail::enumerate_from(perms, 1, sums, rows, partial[first], visit);
  });
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

//! Exact null law of the statistic, keyed by the sum of squared doubled column sums.
struct ExactLaw {
  int treatments = 0;
  int trials = 0;
  std::map<std::int64_t, std::uint64_t> atoms;
  std::uint64_t total = 0;

  [[nodiscard]] double statistic(std::int64_t sum_of_squares) const;
  [[nodiscard]] double probability(std::uint64_t count) const {
    return static_cast<double>(count) / static_cast<double>(total);
  }
};

ExactLaw exact_statistic_law(int treatments, int trials, unsigned threads = 0);

}  // namespace friedman
