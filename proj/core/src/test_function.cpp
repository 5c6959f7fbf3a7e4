// SPDX-License-Identifier: Apache-2.0
#include "friedman/test_function.hpp"

#include <cmath>

#include "friedman/errors.hpp"
#include "friedman/report.hpp"

namespace friedman {

namespace {

// E[exp(i t Y)] = (1 - 2 i t)^(-p/2); real and imaginary parts.
double chisq_cos_mean(double t, int p) {
  return std::pow(1.0 + 4.0 * t * t, -0.25 * p) * std::cos(0.5 * p * std::atan(2.0 * t));
}
double chisq_sin_mean(double t, int p) {
  return std::pow(1.0 + 4.0 * t * t, -0.25 * p) * std::sin(0.5 * p * std::atan(2.0 * t));
}

// Unit-width step profile on [-1, 1]: 1 on the left, 0 on the right, C^2.
double step_profile(double x) {
  if (x <= -1.0) return 1.0;
  if (x <= -0.5) return 1.0 - (2.0 / 3.0) * (x + 1.0) * (x + 1.0) * (x + 1.0);
  if (x <= 0.5) return (2.0 / 3.0) * x * x * x - x + 0.5;
  if (x <= 1.0) return (2.0 / 3.0) * (1.0 - x) * (1.0 - x) * (1.0 - x);
  return 0.0;
}

}  // namespace

TestFunction cosine(double t) {
  const double a = std::abs(t);
  return {"cos(" + format_double(t) + "x)",
          [t](double x) { return std::cos(t * x); },
          {1.0, a, a * a, a * a * a, a * a * a * a},
          [t](int p) { return chisq_cos_mean(t, p); }};
}

TestFunction sine(double t) {
  const double a = std::abs(t);
  return {"sin(" + format_double(t) + "x)",
          [t](double x) { return std::sin(t * x); },
          {1.0, a, a * a, a * a * a, a * a * a * a},
          [t](int p) { return chisq_sin_mean(t, p); }};
}

TestFunction identity_function() {
  return {"x", [](double x) { return x; }, {kInfiniteNorm, 1.0, 0.0, 0.0, 0.0},
          [](int p) { return static_cast<double>(p); }};
}

TestFunction square_function() {
  return {"x^2", [](double x) { return x * x; }, {kInfiniteNorm, kInfiniteNorm, 2.0, 0.0, 0.0},
          [](int p) { return static_cast<double>(p) * (p + 2); }};
}

TestFunction constant_function(double c) {
  return {format_double(c), [c](double) { return c; }, {std::abs(c), 0.0, 0.0, 0.0, 0.0},
          [c](int) { return c; }};
}

TestFunction smoothing_function(double alpha, double z) {
  if (!(alpha > 0.0)) throw DomainError("smoothing width must be positive");
  // Profile derivatives have sup norms 1, 2 and 4; the third derivative jumps.
  const double s = 2.0 / alpha;
  return {"step(" + format_double(alpha) + "," + format_double(z) + ")",
          [alpha, z](double x) { return step_profile(1.0 + 2.0 * (x - z) / alpha); },
          {1.0, s, 2.0 * s * s, 4.0 * s * s * s, kInfiniteNorm},
          {}};
}

std::optional<TestFunction> test_function_by_name(const std::string& name, double t) {
  if (name == "cos") return cosine(t);
  if (name == "sin") return sine(t);
  if (name == "x") return identity_function();
  if (name == "x2") return square_function();
  return std::nullopt;
}

}  // namespace friedman
