// SPDX-License-Identifier: Apache-2.0
#include "friedman/stein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "friedman/chisq.hpp"
#include "friedman/enumeration.hpp"
#include "friedman/errors.hpp"
#include "friedman/quadrature.hpp"
#include "friedman/ranks.hpp"

namespace friedman {

namespace {

constexpr std::string_view kSuite = "stein";
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Beyond this the factor exp(-u/2) is below 1e-22.
double tail_length(int p) { return 100.0 + 2.0 * p; }

}  // namespace

SteinSolution::SteinSolution(int dof, TestFunction h, double tol)
    : dof_(chisq_law(dof).dof), h_(std::move(h)), tol_(tol), chisq_mean_(0.0) {
  if (!h_.value) throw DomainError("test function has no value");
  if (!(tol > 0.0)) throw DomainError("Stein solution needs tol > 0");
  chisq_mean_ = chisq_expectation(chisq_law(dof_), h_.value, 1e-10);
}

double SteinSolution::fprime_by(Form form, double x) const {
  const double p = dof_;
  if (form == Form::head) {
    // f'(x) = int_0^1 2 w^(p-1) exp(x (1 - w^2) / 2) g(x w^2) dw
    auto integrand = [&](double w) {
      return 2.0 * std::pow(w, p - 1.0) * std::exp(0.5 * x * (1.0 - w * w)) * centered(x * w * w);
    };
    return integrate(integrand, 0.0, 1.0, tol_, 0.0, 20000).value;
  }
  // f'(x) = -(1/x) int_0^inf (1 + u/x)^(p/2 - 1) exp(-u/2) g(x + u) du
  auto integrand = [&](double u) {
    return std::pow(1.0 + u / x, 0.5 * p - 1.0) * std::exp(-0.5 * u) * centered(x + u);
  };
  const double len = tail_length(dof_);
  double sum = integrate(integrand, 0.0, 0.2 * len, tol_ * x, 0.0, 20000).value;
  sum += integrate(integrand, 0.2 * len, len, tol_ * x, 0.0, 20000).value;
  return -sum / x;
}

double SteinSolution::fprime(double x) const {
  if (!(x >= 0.0)) throw DomainError("f' is defined for x >= 0");
  if (x == 0.0) return 2.0 * centered(0.0) / dof_;
  return fprime_by(x <= dof_ ? Form::head : Form::tail, x);
}

double SteinSolution::derivative(int k, double x) const {
  if (k < 1 || k > 4) throw DomainError("derivative order must be 1..4");
  if (k == 1) return fprime(x);
  if (!(x > 0.0)) throw DomainError("higher derivatives need x > 0");
  const Form form = x <= dof_ ? Form::head : Form::tail;
  auto f = [&](double y) { return fprime_by(form, y); };
  // Central stencils of fourth order for the (k-1)-th derivative of f'.
  const int reach = k == 4 ? 3 : 2;
  double h = std::pow(kEps, 1.0 / (k + 2)) * std::max(1.0, x);
  h = std::min(h, x / (reach + 1.0));
  switch (k) {
    case 2:
      return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    case 3:
      return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    default:
      return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) +
              f(x - 3 * h)) /
             (8 * h * h * h);
  }
}

SteinSolution solve_fprime(int dof, const TestFunction& h) { return SteinSolution(dof, h); }

double stein_residual(const SteinSolution& sol, double x) {
  const double f1 = sol.fprime(x);
  const double f2 = x > 0.0 ? sol.derivative(2, x) : 0.0;
  return std::abs(x * f2 + 0.5 * (sol.dof() - x) * f1 - sol.centered(x));
}

std::vector<double> stein_grid(int dof, int points) {
  if (points < 4) throw DomainError("grid needs at least four points");
  const double lo = 0.05;
  const double hi = dof + 20.0 * std::sqrt(static_cast<double>(dof));
  const int half = points / 2;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < half; ++i) grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (half - 1)));
  for (int i = 0; i < points - half; ++i) grid.push_back(lo + (hi - lo) * i / (points - half - 1));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

bool DerivativeBoundResult::holds() const {
  return std::all_of(caps.begin(), caps.end(), [&](const DerivativeCap& c) { return observed <= c.value + slack; });
}

DerivativeBoundResult derivative_bound_check(const SteinSolution& sol, int k, const std::vector<double>& grid,
                                             double slack) {
  if (k < 1 || k > 4) throw DomainError("derivative order must be 1..4");
  DerivativeBoundResult res;
  res.dof = sol.dof();
  res.order = k;
  res.slack = slack;
  for (double x : grid) {
    const double v = std::abs(sol.derivative(k, x));
    if (v > res.observed) res.observed = v, res.at = x;
  }
  const auto& h = sol.test_function();
  const double q = sol.dof() + 2.0 * k - 2.0;
  if (std::isfinite(h.norm(k))) res.caps.push_back({"2 ||h^(k)|| / k", 2.0 / k * h.norm(k)});
  if (std::isfinite(h.norm(k - 1))) {
    const double c = (2.0 * std::sqrt(std::numbers::pi) + std::sqrt(2.0) / std::numbers::e) / std::sqrt(q) + 4.0 / q;
    res.caps.push_back({"c(p, k) ||h^(k-1)||", c * h.norm(k - 1)});
  }
  if (k >= 2 && std::isfinite(h.norm(k - 1)) && std::isfinite(h.norm(k - 2)))
    res.caps.push_back({"4 (3 ||h^(k-1)|| + 2 ||h^(k-2)||) / (p + 2k - 2)",
                        4.0 / q * (3.0 * h.norm(k - 1) + 2.0 * h.norm(k - 2))});
  return res;
}

namespace {

struct ContractionSums {
  double path_matrix = 0.0;
  std::uint64_t count = 0;
  ContractionSums& operator+=(const ContractionSums& o) {
    path_matrix += o.path_matrix;
    count += o.count;
    return *this;
  }
};

}  // namespace

CheckReport verify_lemma21(int r, int n, const TestFunction& h, unsigned threads) {
  CheckReport rep;
  ExactLaw law;
  try {
    law = exact_statistic_law(r, n, threads);
  } catch (const BudgetError& e) {
    rep.skip(kSuite, "Stein identity for g = f(|s|^2)/4", r, n, e.what());
    return rep;
  }
  const SteinSolution sol(r - 1, h);
  struct Derivs {
    double f1, f2;
  };
  std::map<std::int64_t, Derivs> at;
  double scalar = 0.0, direct = 0.0;
  for (const auto& [ss, count] : law.atoms) {
    const double w = law.statistic(ss);
    const Derivs d{sol.fprime(w), w > 0.0 ? sol.derivative(2, w) : 0.0};
    at[ss] = d;
    const double prob = law.probability(count);
    scalar += prob * (w * d.f2 + 0.5 * (r - 1 - w) * d.f1);
    direct += prob * sol.centered(w);
  }

  const CovarianceMatrix sigma = theoretical_covariance(r);
  const double half_scale = 0.5 * score_scale(n, r);
  auto sums = reduce_configurations<ContractionSums>(
      r, n,
      [&](ContractionSums& acc, const ConfigurationView& v) {
        std::int64_t ss = 0;
        for (int c : v.column_sums) ss += static_cast<std::int64_t>(c) * c;
        const Derivs& d = at.at(ss);
        // Hessian of g is f'' s s^T + f' I / 2; its gradient is f' s / 2.
        double quad = 0.0, trace = 0.0, w = 0.0;
        for (int i = 0; i < v.treatments; ++i) {
          const double si = half_scale * v.column_sums[i];
          w += si * si;
          trace += sigma(i, i);
          for (int j = 0; j < v.treatments; ++j) quad += sigma(i, j) * si * half_scale * v.column_sums[j];
        }
        acc.path_matrix += d.f2 * quad + 0.5 * d.f1 * trace - 0.5 * d.f1 * w;
        acc.count += 1;
      },
      threads);
  const double matrix = sums.path_matrix / static_cast<double>(sums.count);
  rep.expect_near(kSuite, "E[grad^T Sigma grad g(S) - S^T grad g(S)] = E[F f''(F) + (r - 1 - F) f'(F) / 2], " + h.name,
                  r, n, matrix, scalar, 1e-5);
  rep.expect_near(kSuite, "E[F f''(F) + (r - 1 - F) f'(F) / 2] = E[h(F)] - E[h(Y)], " + h.name, r, n, scalar, direct,
                  1e-5);
  return rep;
}

CheckReport verify_stein_suite(int p_max, unsigned threads) {
  if (p_max < 1) throw DomainError("Stein suite needs p_max >= 1");
  CheckReport rep;
  const TestFunction functions[] = {cosine(1.0), sine(1.0), identity_function()};
  for (int p = 1; p <= p_max; ++p) {
    const auto grid = stein_grid(p);
    for (const auto& h : functions) {
      const SteinSolution sol(p, h);
      double worst = 0.0;
      for (double x : grid) worst = std::max(worst, stein_residual(sol, x));
      // Entries carry r = p + 1, the treatment count whose limit has p degrees of freedom.
      const std::string tag = ", p = " + std::to_string(p) + ", " + h.name;
      rep.expect_at_most(kSuite, "max residual of the Stein equation on the grid" + tag, p + 1, std::nullopt, worst,
                         1e-5);
      if (h.name == "x") {
        double dev = 0.0;
        for (double x : grid) dev = std::max(dev, std::abs(sol.fprime(x) + 2.0));
        rep.expect_at_most(kSuite, "max |f'(x) + 2|" + tag, p + 1, std::nullopt, dev, 1e-8);
      }
      for (int k = 1; k <= 4; ++k) {
        const auto res = derivative_bound_check(sol, k, grid, k == 1 ? 1e-8 : 1e-6);
        for (const auto& cap : res.caps)
          rep.expect_at_most(kSuite, "sup |f^(" + std::to_string(k) + ")| <= " + cap.name + tag, p + 1,
                             std::nullopt, res.observed, cap.value, res.slack);
      }
    }
  }
  rep.append(verify_lemma21(3, 2, cosine(1.0), threads));
  return rep;
}

}  // namespace friedman
