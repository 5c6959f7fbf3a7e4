// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "friedman/stein.hpp"

namespace {

using namespace friedman;

// f'(x) = x^(-p/2) e^(x/2) int_0^x t^(p/2-1) e^(-t/2) (h(t) - E h(Y)) dt.
double fprime_reference(int p, const TestFunction& h, double x) {
  const double mean = h.chisq_mean(p);
  boost::math::quadrature::tanh_sinh<double> rule;
  const double integral = rule.integrate(
      [&](double t) { return std::pow(t, 0.5 * p - 1.0) * std::exp(-0.5 * t) * (h(t) - mean); }, 0.0, x);
  return std::pow(x, -0.5 * p) * std::exp(0.5 * x) * integral;
}

TEST(SteinSolution, MatchesDirectIntegral) {
  for (int p : {1, 2, 3, 5, 8}) {
    for (const auto& h : {cosine(1.0), sine(0.5), square_function()}) {
      const SteinSolution sol(p, h);
      for (double x : {0.1, 0.7, 1.5, 3.0, static_cast<double>(p), p + 2.5, p + 6.0}) {
        const double ref = fprime_reference(p, h, x);
        EXPECT_NEAR(sol.fprime(x), ref, 1e-9 * std::max(1.0, std::abs(ref))) << h.name << " p=" << p << " x=" << x;
      }
    }
  }
}

TEST(SteinSolution, LimitAtZero) {
  for (int p : {1, 4}) {
    const SteinSolution sol(p, cosine(1.0));
    EXPECT_NEAR(sol.fprime(0.0), 2.0 * sol.centered(0.0) / p, 1e-14);
    EXPECT_NEAR(sol.fprime(1e-6), sol.fprime(0.0), 1e-5);
  }
}

TEST(SteinSolution, IdentityTestFunctionGivesConstant) {
  for (int p = 1; p <= 10; ++p) {
    const SteinSolution sol(p, identity_function());
    for (double x : stein_grid(p, 60)) EXPECT_NEAR(sol.fprime(x), -2.0, 1e-8) << p << ' ' << x;
  }
}

TEST(SteinSolution, SquareTestFunctionClosedForm) {
  // h = x^2: f'(x) = -2 (x + p + 2).
  for (int p : {1, 3, 6}) {
    const SteinSolution sol(p, square_function());
    for (double x : {0.5, 2.0, 9.0}) EXPECT_NEAR(sol.fprime(x), -2.0 * (x + p + 2.0), 1e-8 * (x + p));
  }
}

TEST(SteinSolution, ResidualOnGrid) {
  for (int p : {1, 2, 5, 10})
    for (const auto& h : {cosine(1.0), sine(1.0), cosine(0.25)}) {
      const SteinSolution sol(p, h);
      for (double x : stein_grid(p)) EXPECT_LE(stein_residual(sol, x), 1e-5) << h.name << ' ' << p << ' ' << x;
    }
}

TEST(SteinSolution, DerivativeCapsHold) {
  for (int p : {1, 3, 7})
    for (const auto& h : {cosine(1.0), sine(2.0)}) {
      const SteinSolution sol(p, h);
      const auto grid = stein_grid(p, 120);
      for (int k = 1; k <= 3; ++k) {
        const auto res = derivative_bound_check(sol, k, grid, k == 1 ? 1e-8 : 1e-6);
        EXPECT_FALSE(res.caps.empty());
        EXPECT_TRUE(res.holds()) << h.name << " p=" << p << " k=" << k << " observed=" << res.observed;
      }
    }
}

TEST(SteinSolution, GridShape) {
  const auto grid = stein_grid(4);
  ASSERT_EQ(grid.size(), 198u);
  EXPECT_DOUBLE_EQ(grid.front(), 0.05);
  EXPECT_NEAR(grid.back(), 4 + 20 * 2.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
}

TEST(SteinSolution, ExchangeablePairIdentity) {
  const auto rep = verify_lemma21(3, 2, cosine(1.0));
  EXPECT_TRUE(rep.passed());
  EXPECT_GE(rep.count(CheckStatus::pass), 2u);
}

}  // namespace
