// SPDX-License-Identifier: Apache-2.0
#include "friedman/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "friedman/errors.hpp"
#include "friedman/ranks.hpp"

namespace friedman {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t configuration_count(int treatments, int trials) {
  std::uint64_t per_trial = 1;
  for (int k = 2; k <= treatments; ++k) per_trial = saturating_mul(per_trial, k);
  std::uint64_t total = 1;
  for (int i = 0; i < trials; ++i) total = saturating_mul(total, per_trial);
  return total;
}

void require_budget(std::uint64_t work, std::string_view what, std::uint64_t budget) {
  if (work > budget)
    throw BudgetError(std::string(what) + " needs " +
                      (work == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                        : std::to_string(work)) +
                      " steps, budget is " + std::to_string(budget));
}

std::vector<std::vector<int>> doubled_permutations(int treatments) {
  if (treatments < 2 || treatments > 12)
    throw DomainError("permutation enumeration supports 2 <= r <= 12, got " + std::to_string(treatments));
  std::vector<int> ranks(static_cast<std::size_t>(treatments));
  std::iota(ranks.begin(), ranks.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> twice(ranks.size());
    std::transform(ranks.begin(), ranks.end(), twice.begin(),
                   [treatments](int k) { return 2 * k - treatments - 1; });
    out.push_back(std::move(twice));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return out;
}

double ExactLaw::statistic(std::int64_t sum_of_squares) const {
  return statistic_from_twice_sums(sum_of_squares, trials, treatments);
}

namespace {

struct AtomCounts {
  std::map<std::int64_t, std::uint64_t> atoms;
  AtomCounts& operator+=(const AtomCounts& other) {
    for (const auto& [k, v] : other.atoms) atoms[k] += v;
    return *this;
  }
};

}  // namespace

ExactLaw exact_statistic_law(int treatments, int trials, unsigned threads) {
  if (trials < 1) throw DomainError("need at least one trial, got " + std::to_string(trials));
  auto counts = reduce_configurations<AtomCounts>(
      treatments, trials,
      [](AtomCounts& acc, const ConfigurationView& v) {
        std::int64_t ss = 0;
        for (int c : v.column_sums) ss += static_cast<std::int64_t>(c) * c;
        ++acc.atoms[ss];
      },
      threads);
  ExactLaw law{treatments, trials, std::move(counts.atoms), 0};
  for (const auto& [k, v] : law.atoms) law.total += v;
  return law;
}

}  // namespace friedman
