// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "friedman/chisq.hpp"
#include "friedman/errors.hpp"
#include "friedman/quadrature.hpp"

namespace {

using namespace friedman;
using Decimal50 = boost::multiprecision::cpp_dec_float_50;

double reference_cdf(int p, double z) {
  return static_cast<double>(boost::math::gamma_p(Decimal50(p) / 2, Decimal50(z) / 2));
}
double reference_sf(int p, double z) {
  return static_cast<double>(boost::math::gamma_q(Decimal50(p) / 2, Decimal50(z) / 2));
}

TEST(ChiSquare, CdfAgainstFiftyDigitReference) {
  for (int p = 1; p <= 30; ++p) {
    for (double z : {1e-6, 0.01, 0.3, 1.0, 2.5, 5.0, 10.0, 20.0, 37.0, 60.0, 100.0}) {
      const auto law = chisq_law(p);
      const double cdf = reference_cdf(p, z), sf = reference_sf(p, z);
      EXPECT_NEAR(chisq_cdf(law, z), cdf, 1e-14 + 1e-13 * cdf) << p << ' ' << z;
      EXPECT_NEAR(chisq_sf(law, z), sf, 1e-300 + 1e-12 * sf) << p << ' ' << z;
    }
  }
}

TEST(ChiSquare, TwoDegreesOfFreedomIsExponential) {
  for (double z : {0.0, 0.5, 4.0, 30.0}) EXPECT_NEAR(chisq_sf(chisq_law(2), z), std::exp(-z / 2), 1e-15);
  EXPECT_NEAR(chisq_sf(chisq_law(2), 4.0), 0.1353352832366127, 1e-15);
}

TEST(ChiSquare, CdfIsMonotoneAndComplementary) {
  for (int p : {1, 2, 3, 7, 15}) {
    const auto law = chisq_law(p);
    double prev = 0.0;
    for (double z = 0.0; z < 80.0; z += 0.37) {
      const double c = chisq_cdf(law, z);
      EXPECT_GE(c, prev);
      EXPECT_NEAR(c + chisq_sf(law, z), 1.0, 1e-14);
      prev = c;
    }
  }
  EXPECT_EQ(chisq_cdf(chisq_law(3), 0.0), 0.0);
  EXPECT_EQ(chisq_cdf(chisq_law(3), -1.0), 0.0);
  EXPECT_THROW(chisq_law(0), DomainError);
}

TEST(ChiSquare, PdfIntegratesToCdf) {
  for (int p : {2, 3, 6}) {
    const auto law = chisq_law(p);
    const auto res = integrate([&](double t) { return chisq_pdf(law, t); }, 0.0, 7.5, 1e-13);
    EXPECT_NEAR(res.value, chisq_cdf(law, 7.5), 1e-12);
  }
}

TEST(ChiSquare, RawMoments) {
  const auto m = chisq_mean_moments(chisq_law(3));
  EXPECT_EQ(m[0], 3.0);
  EXPECT_EQ(m[1], 15.0);
  EXPECT_EQ(m[2], 105.0);
  EXPECT_EQ(m[3], 945.0);
}

TEST(ChiSquare, ExpectationMatchesCharacteristicFunction) {
  for (int p = 1; p <= 10; ++p) {
    const auto law = chisq_law(p);
    for (double t : {0.01, 0.25, 1.0, 3.0}) {
      // E[exp(i t Y)] = (1 - 2 i t)^(-p/2).
      const auto cf = std::pow(std::complex<double>(1.0, -2.0 * t), -0.5 * p);
      EXPECT_NEAR(chisq_expectation(law, [t](double x) { return std::cos(t * x); }), cf.real(), 1e-9);
      EXPECT_NEAR(chisq_expectation(law, [t](double x) { return std::sin(t * x); }), cf.imag(), 1e-9);
    }
    EXPECT_NEAR(chisq_expectation(law, [](double x) { return x * x; }), p * (p + 2.0), 1e-8 * p * p);
  }
}

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-14).value, 2.0, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10).value, 2.0, 1e-9);
  EXPECT_NEAR(integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12).value, -1.0, 1e-11);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-14).value,
              std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-10).value, 0.0);
}

TEST(Quadrature, ReportsErrorEstimateAndThrowsOnBudget) {
  const auto res = integrate([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, 1e-12);
  EXPECT_LE(res.error, 1e-12);
  EXPECT_NEAR(res.value, std::sin(50.0) / 50.0, 1e-12);
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / x); }, 1e-8, 1.0, 1e-15, 0.0, 8),
               ConvergenceError);
}

}  // namespace
