// SPDX-License-Identifier: Apache-2.0
#include "friedman/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "friedman/chisq.hpp"
#include "friedman/errors.hpp"
#include "friedman/parallel.hpp"

namespace friedman {

namespace {

void require_shape(int trials, int treatments) {
  if (trials < 1) throw DomainError("need at least one trial, got " + std::to_string(trials));
  if (treatments < 2) throw DomainError("need at least two treatments, got " + std::to_string(treatments));
}

void require_samples(std::uint64_t samples) {
  if (samples < 2) throw DomainError("need at least two Monte Carlo samples");
}

// In-place Fisher-Yates shuffle driven by bit-reproducible bounded integers.
template <class It>
void shuffle(It first, It last, Philox4x32& rng) {
  const auto size = static_cast<std::uint32_t>(last - first);
  for (std::uint32_t i = size; i > 1; --i) std::iter_swap(first + (i - 1), first + rng.uniform_below(i));
}

double chisq_mean_of(const TestFunction& h, int p) {
  if (h.chisq_mean) return h.chisq_mean(p);
  return chisq_expectation(chisq_law(p), h.value, 1e-12);
}

// Integral of the chi-square(p) cdf over [0, z].
double cdf_integral(int p, double z) {
  if (z <= 0.0) return 0.0;
  return z * chisq_cdf(chisq_law(p), z) - p * chisq_cdf(chisq_law(p + 2), z);
}

// Integral of |c - G(z)| over [a, b], G the chi-square(p) cdf.
double abs_gap_integral(int p, double c, double a, double b) {
  if (b <= a) return 0.0;
  const double ga = chisq_cdf(chisq_law(p), a), gb = chisq_cdf(chisq_law(p), b);
  auto signed_part = [&](double lo, double hi) { return c * (hi - lo) - (cdf_integral(p, hi) - cdf_integral(p, lo)); };
  if (c <= ga) return -signed_part(a, b);
  if (c >= gb) return signed_part(a, b);
  double lo = a, hi = b;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (chisq_cdf(chisq_law(p), mid) < c ? lo : hi) = mid;
  }
  const double cross = 0.5 * (lo + hi);
  return signed_part(a, cross) - signed_part(cross, b);
}

}  // namespace

RankMatrix sample_rank_matrix(int trials, int treatments, Philox4x32& rng) {
  require_shape(trials, treatments);
  std::vector<int> ranks(static_cast<std::size_t>(trials) * treatments);
  for (int i = 0; i < trials; ++i) {
    auto row = ranks.begin() + static_cast<std::ptrdiff_t>(i) * treatments;
    std::iota(row, row + treatments, 1);
    shuffle(row, row + treatments, rng);
  }
  return {trials, treatments, std::move(ranks)};
}

std::vector<std::int64_t> simulate_sum_of_squares(int trials, int treatments, std::uint64_t samples,
                                                  std::uint64_t seed, unsigned threads) {
  require_shape(trials, treatments);
  require_samples(samples);
  std::vector<std::int64_t> out(samples);
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  parallel_for(blocks, threads, [&](std::size_t b) {
    Philox4x32 rng({seed, b});
    std::vector<int> perm(static_cast<std::size_t>(treatments));
    std::vector<std::int64_t> sums(static_cast<std::size_t>(treatments));
    const std::uint64_t begin = b * kBlockSize, end = std::min(samples, begin + kBlockSize);
    for (std::uint64_t s = begin; s < end; ++s) {
      std::fill(sums.begin(), sums.end(), 0);
      for (int i = 0; i < trials; ++i) {
        for (int j = 0; j < treatments; ++j) perm[j] = 2 * j + 1 - treatments;
        shuffle(perm.begin(), perm.end(), rng);
        for (int j = 0; j < treatments; ++j) sums[j] += perm[j];
      }
      std::int64_t ss = 0;
      for (auto c : sums) ss += c * c;
      out[s] = ss;
    }
  });
  return out;
}

DiscreteLaw law_from_exact(const ExactLaw& law) {
  DiscreteLaw out;
  for (const auto& [ss, count] : law.atoms) {
    out.values.push_back(law.statistic(ss));
    out.probabilities.push_back(law.probability(count));
  }
  return out;
}

DiscreteLaw law_from_samples(std::vector<std::int64_t> sums, int trials, int treatments) {
  if (sums.empty()) throw DomainError("empty sample");
  std::sort(sums.begin(), sums.end());
  DiscreteLaw out;
  const double total = static_cast<double>(sums.size());
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    out.values.push_back(statistic_from_twice_sums(sums[i], trials, treatments));
    out.probabilities.push_back(static_cast<double>(j - i) / total);
    i = j;
  }
  return out;
}

double kolmogorov_distance(const DiscreteLaw& law, int dof) {
  const auto g = chisq_law(dof);
  double below = 0.0, sup = 0.0;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    const double cdf = chisq_cdf(g, law.values[i]);
    const double at = below + law.probabilities[i];
    sup = std::max({sup, std::abs(below - cdf), std::abs(std::min(at, 1.0) - cdf)});
    below = at;
  }
  return sup;
}

double wasserstein_distance(const DiscreteLaw& law, int dof) {
  chisq_law(dof);
  double total = abs_gap_integral(dof, 0.0, 0.0, law.values.front());
  double level = 0.0;
  for (std::size_t i = 0; i < law.values.size(); ++i) {
    level = std::min(1.0, level + law.probabilities[i]);
    if (i + 1 < law.values.size()) total += abs_gap_integral(dof, level, law.values[i], law.values[i + 1]);
  }
  // Beyond the last atom the empirical cdf is one: integral of the chi-square upper tail.
  const double m = law.values.back();
  total += dof * chisq_sf(chisq_law(dof + 2), m) - m * chisq_sf(chisq_law(dof), m);
  return total;
}

double dkw_half_width(std::uint64_t samples) {
  require_samples(samples);
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(samples)));
}

DistanceEstimate estimate_kolmogorov(int trials, int treatments, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads) {
  const auto law = law_from_samples(simulate_sum_of_squares(trials, treatments, samples, seed, threads), trials,
                                    treatments);
  return {kolmogorov_distance(law, treatments - 1), dkw_half_width(samples), samples, "monte-carlo"};
}

DistanceEstimate estimate_wasserstein(int trials, int treatments, std::uint64_t samples, std::uint64_t seed,
                                      unsigned threads) {
  const auto law = law_from_samples(simulate_sum_of_squares(trials, treatments, samples, seed, threads), trials,
                                    treatments);
  // DKW band integrated over the sampled range.
  return {wasserstein_distance(law, treatments - 1), dkw_half_width(samples) * law.values.back(), samples,
          "monte-carlo"};
}

DistanceEstimate exact_kolmogorov(int trials, int treatments, unsigned threads) {
  const auto law = exact_statistic_law(treatments, trials, threads);
  return {kolmogorov_distance(law_from_exact(law), treatments - 1), 0.0, law.total, "exact-enumeration"};
}

DistanceEstimate exact_wasserstein(int trials, int treatments, unsigned threads) {
  const auto law = exact_statistic_law(treatments, trials, threads);
  return {wasserstein_distance(law_from_exact(law), treatments - 1), 0.0, law.total, "exact-enumeration"};
}

double exact_smooth_gap(int trials, int treatments, const TestFunction& h, unsigned threads) {
  const auto law = exact_statistic_law(treatments, trials, threads);
  double mean = 0.0;
  for (const auto& [ss, count] : law.atoms) mean += law.probability(count) * h(law.statistic(ss));
  return std::abs(mean - chisq_mean_of(h, treatments - 1));
}

DistanceEstimate estimate_smooth_gap(int trials, int treatments, const TestFunction& h, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads) {
  const auto sums = simulate_sum_of_squares(trials, treatments, samples, seed, threads);
  double mean = 0.0, sq = 0.0;
  for (auto ss : sums) {
    const double v = h(statistic_from_twice_sums(ss, trials, treatments));
    mean += v;
    sq += v * v;
  }
  const double count = static_cast<double>(samples);
  mean /= count;
  const double var = std::max(0.0, (sq - count * mean * mean) / (count - 1.0));
  return {std::abs(mean - chisq_mean_of(h, treatments - 1)), 2.5758293035489 * std::sqrt(var / count), samples,
          "monte-carlo"};
}

std::vector<RateRow> rate_experiment(int treatments, const std::vector<int>& trials, const TestFunction& h,
                                     RateMode mode, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  std::vector<RateRow> rows;
  for (int n : trials) {
    require_shape(n, treatments);
    RateRow row;
    row.trials = n;
    const bool exact = mode == RateMode::exact ||
                       (mode == RateMode::automatic && configuration_count(treatments, n) <= kEnumerationBudget);
    if (exact) {
      row.gap = exact_smooth_gap(n, treatments, h, threads);
      row.method = "exact-enumeration";
    } else {
      const auto est = estimate_smooth_gap(n, treatments, h, samples, seed, threads);
      row.gap = est.value;
      row.half_width = est.half_width;
      row.method = est.method;
    }
    row.scaled_gap = n * row.gap;
    if (std::isfinite(h.norm(1)) && std::isfinite(h.norm(2)) && std::isfinite(h.norm(3))) {
      row.bounds = make_bound_report(n, treatments, {h.norm(1), h.norm(2), h.norm(3)});
      row.within_bound = row.gap - row.half_width <= row.bounds->selected;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace friedman
