// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>

namespace friedman {

//! Chi-square law with p degrees of freedom, p >= 1.
struct ChiSquareLaw {
  int dof;
};

ChiSquareLaw chisq_law(int dof);

//! Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

double chisq_cdf(ChiSquareLaw law, double z);
//! Upper tail 1 - cdf, computed without cancellation.
double chisq_sf(ChiSquareLaw law, double z);
double chisq_pdf(ChiSquareLaw law, double t);

//! E[Y^k] for k = 1..4: p, p(p+2), p(p+2)(p+4), p(p+2)(p+4)(p+6).
std::array<double, 4> chisq_mean_moments(ChiSquareLaw law);

//! E[h(Y)] to absolute tolerance tol. The range is truncated at a point past
//! which the tail mass times a local bound of |h| falls below tol / 2.
double chisq_expectation(ChiSquareLaw law, const std::function<double(double)>& h,
                         double tol = 1e-10);

}  // namespace friedman
