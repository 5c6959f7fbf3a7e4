// SPDX-License-Identifier: Apache-2.0
#include "friedman/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "friedman/errors.hpp"
#include "friedman/report.hpp"

namespace friedman {

namespace {

void require_shape(int trials, int treatments) {
  if (trials < 1) throw DomainError("bounds need n >= 1, got " + std::to_string(trials));
  if (treatments < 2) throw DomainError("bounds need r >= 2, got " + std::to_string(treatments));
}

void require_norms(const SmoothNorms& h) {
  for (double v : {h.h1, h.h2, h.h3}) {
    if (std::isnan(v) || v < 0.0) throw DomainError("derivative norms must be non-negative");
    if (std::isinf(v)) throw InfiniteNormError("bound needs finite derivative norms");
  }
}

}  // namespace

double bound_theorem1(int trials, int treatments, SmoothNorms h) {
  require_shape(trials, treatments);
  require_norms(h);
  const double ratio = static_cast<double>(treatments) / trials;
  return ratio * (293.0 * h.h1 + (2269.0 + 431.0 * ratio) * h.h2 + (3533.0 + 646.0 * ratio) * h.h3);
}

SharpCoefficients sharp_coefficients(int trials, int treatments) {
  if (trials < 2) throw DomainError("refined bound needs n >= 2, got " + std::to_string(trials));
  require_shape(trials, treatments);
  const double n = trials;
  const double r = treatments;
  SharpCoefficients c;
  c.a_n = 3.0 + 9.0 / (5.0 * n) - 21.0 / (5.0 * n * n);
  const double root_a = std::sqrt(c.a_n);
  c.b_n = 36.0 * root_a + 11.98 + 134.28 * std::sqrt(7.0 / 48.0 + 1.0 / (5.0 * n)) +
          18.0 * std::sqrt(5.0) / std::sqrt(n) + 200.0 / n;
  c.c_t = 7.0 / 48.0 + r * r / (36.0 * n * n) + 1.0 / (5.0 * n);
  const double b_term = c.b_n + 31.0 * r / n;
  c.beta1 = 42.33 + 144.112 * root_a;
  c.beta2 = 78.89 + 216.204 * root_a + 8.0 * root_a * b_term;
  c.beta3 = 783.15 + 4158.75 / n + 3572.39 / (n * n) + 12.0 * root_a * b_term;
  return c;
}

double bound_sharp(int trials, int treatments, SmoothNorms h) {
  require_shape(trials, treatments);
  require_norms(h);
  const SharpCoefficients c = sharp_coefficients(trials, treatments);
  const double ratio = static_cast<double>(treatments) / trials;
  return ratio * (c.beta1 * h.h1 + c.beta2 * h.h2 + c.beta3 * h.h3);
}

double bound_trivial(int treatments, SmoothNorms h) {
  if (treatments < 2) throw DomainError("bounds need r >= 2, got " + std::to_string(treatments));
  if (std::isinf(h.h1)) throw InfiniteNormError("trivial bound needs a finite ||h'||");
  return 2.0 * (treatments - 1) * h.h1;
}

double bound_two_treatments(int trials, TwoTreatmentKind kind, SmoothNorms h) {
  require_shape(trials, 2);
  const double n = trials;
  if (kind == TwoTreatmentKind::wasserstein) return (87.0 + 48.0 / std::sqrt(n)) / std::sqrt(n);
  if (std::isinf(h.h1) || std::isinf(h.h2))
    throw InfiniteNormError("two-treatment bound needs finite ||h'|| and ||h''||");
  return (69.0 + 43.0 / n) / n * (h.h1 + h.h2);
}

double bound_kolmogorov_raw(int trials, int treatments) {
  require_shape(trials, treatments);
  const double n = trials;
  const double r = treatments;
  if (treatments == 2) return 0.9496 / std::sqrt(n);
  if (treatments == 3)
    return 29.0 * std::pow(n, -0.25) + 67.0 * std::pow(n, -0.5) + 62.0 * std::pow(n, -0.75) +
           8.0 * std::pow(n, -1.25) + 38.0 * std::pow(n, -1.5);
  return 12.0 * std::pow(r, 0.125) * (1.0 + 1.0 / r) * std::pow(n, -0.25) +
         41.0 / (std::pow(r, 0.25) * std::sqrt(n)) + 28.0 * std::pow(r, 0.375) * std::pow(n, -0.75) +
         3.0 * std::pow(r, 0.125) * std::pow(n, -1.25) + 8.0 * std::pow(r, 0.75) * std::pow(n, -1.5);
}

double bound_kolmogorov(int trials, int treatments) {
  return std::min(1.0, bound_kolmogorov_raw(trials, treatments));
}

double kolmogorov_smoothing_width(int trials, int treatments) {
  require_shape(trials, treatments);
  if (treatments == 2) throw DomainError("the two-treatment Kolmogorov bound is not smoothed");
  const double quarter = std::pow(static_cast<double>(trials), -0.25);
  if (treatments == 3) return 28.70 * quarter;
  return 21.15 * std::pow(static_cast<double>(treatments), 0.625) * quarter;
}

std::string jensen_formula(int treatments) {
  if (treatments < 2) throw DomainError("bounds need r >= 2, got " + std::to_string(treatments));
  const std::string r = std::to_string(treatments);
  return "d_K <= C(" + r + ") * n^(-" + r + "/" + std::to_string(treatments + 1) +
         "), C(" + r + ") not explicit";
}

BoundReport make_bound_report(int trials, int treatments, SmoothNorms norms) {
  require_shape(trials, treatments);
  BoundReport rep;
  rep.trials = trials;
  rep.treatments = treatments;
  rep.norms = norms;
  rep.theorem1 = bound_theorem1(trials, treatments, norms);
  rep.selected = rep.theorem1;
  rep.selected_name = "theorem1";
  auto consider = [&](double value, const char* name) {
    if (value < rep.selected) {
      rep.selected = value;
      rep.selected_name = name;
    }
  };
  if (trials >= 2) {
    rep.coefficients = sharp_coefficients(trials, treatments);
    rep.sharp = bound_sharp(trials, treatments, norms);
    consider(*rep.sharp, "sharp");
  }
  rep.trivial = bound_trivial(treatments, norms);
  consider(rep.trivial, "trivial");
  if (treatments == 2) {
    rep.two_treatment_smooth = bound_two_treatments(trials, TwoTreatmentKind::smooth, norms);
    rep.two_treatment_wasserstein = bound_two_treatments(trials, TwoTreatmentKind::wasserstein);
    consider(*rep.two_treatment_smooth, "two_treatment_smooth");
    // Lipschitz test functions: |E h(F) - E h(Y)| <= ||h'|| d_W.
    consider(norms.h1 * *rep.two_treatment_wasserstein, "two_treatment_wasserstein");
  }
  rep.kolmogorov_raw = bound_kolmogorov_raw(trials, treatments);
  rep.kolmogorov = std::min(1.0, rep.kolmogorov_raw);
  rep.jensen = jensen_formula(treatments);
  return rep;
}

}  // namespace friedman
