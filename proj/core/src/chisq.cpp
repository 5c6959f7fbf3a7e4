// SPDX-License-Identifier: Apache-2.0
#include "friedman/chisq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "friedman/errors.hpp"
#include "friedman/quadrature.hpp"

namespace friedman {

namespace {

constexpr double kSeriesTol = 1e-15;
constexpr int kMaxIterations = 100000;

void require_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma needs x >= 0");
}

// x^a e^-x / Gamma(a)
double gamma_prefactor(double a, double x) { return std::exp(a * std::log(x) - x - std::lgamma(a)); }

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kSeriesTol) return sum * gamma_prefactor(a, x);
  }
  throw ConvergenceError("incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kSeriesTol) return h * gamma_prefactor(a, x);
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

bool use_series(double a, double x) { return x < a + 1.0; }

}  // namespace

ChiSquareLaw chisq_law(int dof) {
  if (dof < 1) throw DomainError("chi-square needs p >= 1, got " + std::to_string(dof));
  return {dof};
}

double regularized_gamma_p(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return use_series(a, x) ? lower_series(a, x) : 1.0 - upper_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return use_series(a, x) ? 1.0 - lower_series(a, x) : upper_fraction(a, x);
}

double chisq_cdf(ChiSquareLaw law, double z) {
  chisq_law(law.dof);
  if (std::isnan(z)) throw DomainError("chi-square cdf at NaN");
  if (z <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * law.dof, 0.5 * z);
}

double chisq_sf(ChiSquareLaw law, double z) {
  chisq_law(law.dof);
  if (std::isnan(z)) throw DomainError("chi-square survival at NaN");
  if (z <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * law.dof, 0.5 * z);
}

double chisq_pdf(ChiSquareLaw law, double t) {
  chisq_law(law.dof);
  if (t < 0.0) return 0.0;
  const double half = 0.5 * law.dof;
  if (t == 0.0) {
    if (law.dof == 1) return std::numeric_limits<double>::infinity();
    return law.dof == 2 ? 0.5 : 0.0;
  }
  return std::exp((half - 1.0) * std::log(t) - 0.5 * t - half * std::log(2.0) - std::lgamma(half));
}

std::array<double, 4> chisq_mean_moments(ChiSquareLaw law) {
  chisq_law(law.dof);
  const double p = law.dof;
  return {p, p * (p + 2), p * (p + 2) * (p + 4), p * (p + 2) * (p + 4) * (p + 6)};
}

double chisq_expectation(ChiSquareLaw law, const std::function<double(double)>& h, double tol) {
  chisq_law(law.dof);
  if (!(tol > 0.0)) throw DomainError("chi-square expectation needs tol > 0");
  const int p = law.dof;
  const double half = 0.5 * p;
  const double log_norm = half * std::log(2.0) + std::lgamma(half);

  // Truncation point: grow T until P(Y > T) * max |h| on [T, 2T + 20] is small.
  const double step = 10.0 * std::sqrt(2.0 * p) + 10.0;
  double upper = p + step;
  for (int attempt = 0;; ++attempt) {
    double local = 0.0;
    for (int i = 0; i <= 64; ++i) local = std::max(local, std::abs(h(upper + i * (upper + 20.0) / 64.0)));
    if (chisq_sf(law, upper) * std::max(local, 1.0) < 0.25 * tol) break;
    if (attempt > 200) throw ConvergenceError("chi-square expectation: tail of h does not decay");
    upper += step;
  }

  // On [0, edge] substitute t = u^2 so the p = 1 singularity disappears.
  const double edge = std::min(1.0, upper);
  auto near_zero = [&](double u) {
    if (u <= 0.0) return p == 1 ? 2.0 * h(0.0) * std::exp(-log_norm) : 0.0;
    const double t = u * u;
    return 2.0 * h(t) * std::exp((p - 1) * std::log(u) - 0.5 * t - log_norm);
  };
  auto body = [&](double t) {
    return h(t) * std::exp((half - 1.0) * std::log(t) - 0.5 * t - log_norm);
  };
  const double quad_tol = 0.25 * tol;
  double total = integrate(near_zero, 0.0, std::sqrt(edge), quad_tol, 0.0).value;
  if (upper > edge) total += integrate(body, edge, upper, quad_tol, 0.0).value;
  return total;
}

}  // namespace friedman
