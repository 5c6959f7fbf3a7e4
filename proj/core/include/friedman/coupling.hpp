// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "friedman/ranks.hpp"
#include "friedman/report.hpp"
#include "friedman/rng.hpp"

namespace friedman {

//! Exchangeable pair built by swapping two treatments within one trial.
struct PairSample {
  ScoreVector base;
  ScoreVector swapped;
  int trial = 0;   // M, 0-based
  int first = 0;   // K, 0-based
  int second = 0;  // L, 0-based; may equal first, in which case nothing moves
};

//! Draws M, K, L independently and uniformly and applies the swap.
PairSample sample_pair(const RankMatrix& ranks, Philox4x32& rng);

//! The same pair for a fixed draw; used by the exhaustive checks.
PairSample swap_pair(const CenteredRanks& ranks, int trial, int first, int second);

//! Conditional mean of the increment equals -2/(rn) times the score vector,
//! checked on every configuration and draw in exact integer arithmetic.
CheckReport verify_regression(int treatments, int trials, unsigned threads = 0);

//! E[(S' - S)_j (S' - S)_u] = 4 sigma_ju / (r n), exact.
CheckReport verify_increment_moments(int treatments, int trials, unsigned threads = 0);

//! Which products of three or four increment coordinates can be non-zero, and
//! their values, on every configuration and draw.
CheckReport verify_triple_structure(int treatments, int trials, unsigned threads = 0);

//! The joint law of (F, F') is symmetric.
CheckReport verify_exchangeability(int treatments, int trials, unsigned threads = 0);

//! E[W^T grad f(W)] = (rn/4) E[(W' - W)^T (grad f(W') - grad f(W))] for a few
//! smooth f, by enumeration in double precision. Also records the gap of the
//! variant with the covariance term on the left.
CheckReport verify_pair_identity(int treatments, int trials, unsigned threads = 0);

//! Monte-Carlo version of the increment covariance for large configurations.
CheckReport verify_increment_moments_mc(int treatments, int trials, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 0);

}  // namespace friedman
