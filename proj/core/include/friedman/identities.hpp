// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "friedman/rational.hpp"
#include "friedman/report.hpp"

namespace friedman {

//! Sums of a symmetric function over all index tuples in {0..r-1}^k, split by
//! which indices coincide.
struct IndexSplit {
  BigInt full;
  BigInt decomposed;
};

//! Checks the two-, three- and four-index splittings for `trials` random
//! symmetric integer functions drawn from the seeded stream.
CheckReport verify_index_decomposition(int treatments, int trials, std::uint64_t seed);

//! Four-index split for f identically one; both sides equal r^4.
IndexSplit constant_four_index_split(int treatments);

//! P(F = 0) for r = 2 and n = 2k trials: C(2k, k) / 4^k.
Rational two_treatment_zero_probability(int k);

//! Exact P(F = 0) against C(2k, k) / 4^k, and |P - sqrt(2 / (pi n))| <= 0.3 / n.
CheckReport verify_zero_atom(int k_max, unsigned threads = 0);

}  // namespace friedman
