// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

namespace friedman {

//! Sup norms of the first three derivatives of a test function.
struct SmoothNorms {
  double h1 = 1.0;
  double h2 = 1.0;
  double h3 = 1.0;
};

struct SharpCoefficients {
  double a_n = 0.0;
  double b_n = 0.0;
  double c_t = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
};

enum class TwoTreatmentKind { wasserstein, smooth };

//! Compact smooth-test-function bound; valid for all n >= 1, r >= 2.
double bound_theorem1(int trials, int treatments, SmoothNorms norms);

//! Coefficients of the refined bound. beta1 depends on n only. Needs n >= 2.
SharpCoefficients sharp_coefficients(int trials, int treatments);
double bound_sharp(int trials, int treatments, SmoothNorms norms);

//! 2 (r - 1) ||h'||, from the mean-value theorem and E[F] = E[Y] = r - 1.
double bound_trivial(int treatments, SmoothNorms norms);

//! Two-treatment bounds. The smooth form uses ||h'|| and ||h''|| only.
double bound_two_treatments(int trials, TwoTreatmentKind kind, SmoothNorms norms = {});

//! Kolmogorov distance bound before clamping; may exceed 1 for small n.
double bound_kolmogorov_raw(int trials, int treatments);
double bound_kolmogorov(int trials, int treatments);

//! Smoothing width used to derive the Kolmogorov bound for r >= 3.
double kolmogorov_smoothing_width(int trials, int treatments);

//! Earlier Kolmogorov rate C(r) n^(-r/(r+1)) as text; C(r) has no known value.
std::string jensen_formula(int treatments);

struct BoundReport {
  int trials = 0;
  int treatments = 0;
  SmoothNorms norms;
  double theorem1 = 0.0;
  std::optional<SharpCoefficients> coefficients;
  std::optional<double> sharp;
  double trivial = 0.0;
  std::optional<double> two_treatment_smooth;
  std::optional<double> two_treatment_wasserstein;
  double kolmogorov = 0.0;
  double kolmogorov_raw = 0.0;
  std::string jensen;
  //! Smallest of the bounds that apply to the smooth test function.
  double selected = 0.0;
  std::string selected_name;
};

BoundReport make_bound_report(int trials, int treatments, SmoothNorms norms);

}  // namespace friedman
