// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "friedman/identities.hpp"

namespace {

using namespace friedman;

TEST(IndexDecomposition, RandomSymmetricFunctions) {
  for (int r : {3, 4, 5}) {
    const auto rep = verify_index_decomposition(r, 30, 1234 + r);
    EXPECT_TRUE(rep.passed()) << r;
    EXPECT_GE(rep.count(CheckStatus::pass), 5u);
  }
}

TEST(IndexDecomposition, SeedChangesDataNotOutcome) {
  EXPECT_TRUE(verify_index_decomposition(4, 10, 1).passed());
  EXPECT_TRUE(verify_index_decomposition(4, 10, 2).passed());
}

TEST(IndexDecomposition, ConstantFunctionCounts) {
  for (int r = 1; r <= 8; ++r) {
    const auto split = constant_four_index_split(r);
    EXPECT_EQ(split.full, BigInt(r * r * r * r));
    EXPECT_EQ(split.decomposed, split.full);
  }
  EXPECT_EQ(constant_four_index_split(4).full, BigInt(256));
}

TEST(ZeroAtom, CentralBinomial) {
  EXPECT_EQ(two_treatment_zero_probability(1), Rational(1, 2));
  EXPECT_EQ(two_treatment_zero_probability(2), Rational(6, 16));
  EXPECT_EQ(two_treatment_zero_probability(6), Rational(924, 4096));
  for (int k = 1; k <= 30; ++k) {
    const double n = 2.0 * k;
    EXPECT_LE(std::abs(to_double(two_treatment_zero_probability(k)) - std::sqrt(2.0 / (std::numbers::pi * n))),
              0.3 / n);
  }
}

TEST(ZeroAtom, EnumerationAgrees) { EXPECT_TRUE(verify_zero_atom(6).passed()); }

}  // namespace
