// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friedman/bounds.hpp"
#include "friedman/enumeration.hpp"
#include "friedman/ranks.hpp"
#include "friedman/rng.hpp"
#include "friedman/test_function.hpp"

namespace friedman {

//! Samples per random stream. Stream b covers samples [b * kBlockSize, (b + 1) * kBlockSize).
inline constexpr std::uint64_t kBlockSize = 4096;

RankMatrix sample_rank_matrix(int trials, int treatments, Philox4x32& rng);

//! Sums of squared doubled column sums for `samples` null configurations.
//! Output is identical for every thread count.
std::vector<std::int64_t> simulate_sum_of_squares(int trials, int treatments,
                                                  std::uint64_t samples, std::uint64_t seed,
                                                  unsigned threads = 0);

struct DistanceEstimate {
  double value = 0.0;
  //! 99% confidence half-width; zero for exact results.
  double half_width = 0.0;
  std::uint64_t samples = 0;
  std::string method;  //!< "exact-enumeration" or "monte-carlo"
};

//! Empirical law as sorted distinct atoms and their probabilities.
struct DiscreteLaw {
  std::vector<double> values;
  std::vector<double> probabilities;
};

DiscreteLaw law_from_exact(const ExactLaw& law);
DiscreteLaw law_from_samples(std::vector<std::int64_t> sums, int trials, int treatments);

//! sup_z |P(X <= z) - P(Y <= z)|, attained at an atom from the left or right.
double kolmogorov_distance(const DiscreteLaw& law, int dof);
//! Integral of |P(X <= z) - P(Y <= z)| over z >= 0.
double wasserstein_distance(const DiscreteLaw& law, int dof);

//! DKW half-width sqrt(ln(2 / 0.01) / (2 N)).
double dkw_half_width(std::uint64_t samples);

DistanceEstimate estimate_kolmogorov(int trials, int treatments, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 0);
DistanceEstimate estimate_wasserstein(int trials, int treatments, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads = 0);
DistanceEstimate exact_kolmogorov(int trials, int treatments, unsigned threads = 0);
DistanceEstimate exact_wasserstein(int trials, int treatments, unsigned threads = 0);

//! |E[h(F)] - E[h(Y)]| from the exact law.
double exact_smooth_gap(int trials, int treatments, const TestFunction& h,
                        unsigned threads = 0);
DistanceEstimate estimate_smooth_gap(int trials, int treatments, const TestFunction& h,
                                     std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 0);

enum class RateMode { exact, monte_carlo, automatic };

struct RateRow {
  int trials = 0;
  double gap = 0.0;
  double half_width = 0.0;
  double scaled_gap = 0.0;  //!< n * gap
  std::string method;
  std::optional<BoundReport> bounds;  //!< absent when a needed norm is infinite
  //! gap - half_width <= selected bound; true when no bound applies.
  bool within_bound = true;
};

//! Smooth-function gap as a function of n at fixed r.
std::vector<RateRow> rate_experiment(int treatments, const std::vector<int>& trials,
                                     const TestFunction& h, RateMode mode,
                                     std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 0);

}  // namespace friedman
