// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "friedman/report.hpp"
#include "friedman/test_function.hpp"

namespace friedman {

//! Solution of x f''(x) + (p - x) f'(x) / 2 = h(x) - E[h(Y)], Y chi-square(p).
//! f' is evaluated by quadrature; higher derivatives by central differences
//! of f'.
class SteinSolution {
 public:
  //! tol is the absolute quadrature tolerance for each evaluation of f'.
  SteinSolution(int dof, TestFunction h, double tol = 1e-13);

  [[nodiscard]] int dof() const noexcept { return dof_; }
  [[nodiscard]] double chisq_mean() const noexcept { return chisq_mean_; }
  [[nodiscard]] const TestFunction& test_function() const noexcept { return h_; }

  //! f'(x) for x >= 0. At x = 0 this is 2 (h(0) - E[h(Y)]) / p.
  [[nodiscard]] double fprime(double x) const;
  //! f^(k)(x) for k = 1..4 and x > 0.
  [[nodiscard]] double derivative(int k, double x) const;
  //! h(x) - E[h(Y)].
  [[nodiscard]] double centered(double x) const { return h_(x) - chisq_mean_; }

 private:
  enum class Form { head, tail };
  [[nodiscard]] double fprime_by(Form form, double x) const;

  int dof_;
  TestFunction h_;
  double tol_;
  double chisq_mean_;
};

SteinSolution solve_fprime(int dof, const TestFunction& h);

//! |x f''(x) + (p - x) f'(x) / 2 - (h(x) - E[h(Y)])|.
double stein_residual(const SteinSolution& solution, double x);

//! Grid on [0.05, p + 20 sqrt(p)]: points / 2 geometric and points / 2 uniform
//! nodes, merged; the shared endpoints appear once.
std::vector<double> stein_grid(int dof, int points = 200);

struct DerivativeCap {
  std::string name;
  double value;
};

struct DerivativeBoundResult {
  int dof = 0;
  int order = 0;
  double observed = 0.0;  //!< max over the grid of |f^(k)|
  double at = 0.0;        //!< where the maximum was seen
  std::vector<DerivativeCap> caps;  //!< finite caps only
  double slack = 0.0;
  [[nodiscard]] bool holds() const;
};

//! Compares sup |f^(k)| on the grid with the three derivative caps that are
//! finite for h. slack absorbs finite-difference error.
DerivativeBoundResult derivative_bound_check(const SteinSolution& solution, int order,
                                             const std::vector<double>& grid, double slack);

//! Stein identity for g(s) = f(|s|^2) / 4: the covariance-contracted Hessian
//! minus s . grad g, summed exactly over all configurations, against the
//! scalar form and against E[h(F)] - E[h(Y)].
CheckReport verify_lemma21(int treatments, int trials, const TestFunction& h,
                           unsigned threads = 0);

//! Residual and derivative-cap checks over a set of test functions and p.
CheckReport verify_stein_suite(int p_max, unsigned threads = 0);

}  // namespace friedman
