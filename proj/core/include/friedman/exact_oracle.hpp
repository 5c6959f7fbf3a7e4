// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <utility>

#include "friedman/rational.hpp"
#include "friedman/report.hpp"

namespace friedman {

//! Named exact expectations for one (r, n). Single-trial tables use n = 1.
struct ExactMomentTable {
  int treatments = 0;
  int trials = 0;
  std::map<std::string, Rational> entries;

  [[nodiscard]] const Rational& at(const std::string& key) const;
  [[nodiscard]] bool contains(const std::string& key) const { return entries.count(key) > 0; }
};

// Keys of single_trial_moments. rho_l, rho_j, rho_s, rho_t denote the centered
// ranks of four distinct treatments in one trial; a = (r^2 - 1) / 4 and
// q = (r^2 - 1) - 12 rho^2.
namespace keys {
inline constexpr const char* rho = "E[rho_l]";
inline constexpr const char* rho2 = "E[rho_l^2]";
inline constexpr const char* rho3 = "E[rho_l^3]";
inline constexpr const char* rho4 = "E[rho_l^4]";
inline constexpr const char* rho6 = "E[rho_l^6]";
inline constexpr const char* rho8 = "E[rho_l^8]";
inline constexpr const char* rho12 = "E[rho_l^12]";
inline constexpr const char* rho16 = "E[rho_l^16]";
inline constexpr const char* rho_rho = "E[rho_l rho_j]";
inline constexpr const char* rho2_rho = "E[rho_l^2 rho_j]";
inline constexpr const char* rho3_rho = "E[rho_l^3 rho_j]";
inline constexpr const char* rho2_rho2 = "E[rho_l^2 rho_j^2]";
inline constexpr const char* rho_rho_rho = "E[rho_l rho_j rho_s]";
inline constexpr const char* rho2_rho_rho = "E[rho_l^2 rho_j rho_s]";
inline constexpr const char* rho_rho_rho_rho = "E[rho_l rho_j rho_s rho_t]";
inline constexpr const char* cubic_sq_rho2_same = "E[(a rho_j + rho_j^3)^2 rho_j^2]";
inline constexpr const char* cubic_sq_rho2_other = "E[(a rho_j + rho_j^3)^2 rho_k^2]";
inline constexpr const char* cubic_4 = "E[(a rho_j + rho_j^3)^4]";
inline constexpr const char* quad_sq_rho4_same = "E[q_j^2 rho_j^4]";
inline constexpr const char* quad_sq_rho4_other = "E[q_j^2 rho_k^4]";
inline constexpr const char* quad_sq_rho2_rho2 = "E[q_j^2 rho_j^2 rho_k^2]";
inline constexpr const char* quad_sq_rho4_rho4 = "E[q_j^2 rho_k^4 rho_s^4]";
inline constexpr const char* quad_4 = "E[q_j^4]";
inline constexpr const char* gap2 = "E[(rho_k - rho_l)^2]";
inline constexpr const char* gap4 = "E[(rho_k - rho_l)^4]";
inline constexpr const char* scaled_gap_sq = "E[(6 (rho_k - rho_l)^2 / (r (r + 1)) - 1)^2]";

// Keys of joint_moments and column_moments.
inline constexpr const char* mean_f = "E[F]";
inline constexpr const char* mean_f2 = "E[F^2]";
inline constexpr const char* var_f = "Var(F)";
inline constexpr const char* s2 = "E[S_j^2]";
inline constexpr const char* s4 = "E[S_j^4]";
inline constexpr const char* s6 = "E[S_j^6]";
inline constexpr const char* s_s = "E[S_j S_k]";
inline constexpr const char* s2_s2 = "E[S_j^2 S_k^2]";
inline constexpr const char* t_mean_sq = "E[T_m]^2";
inline constexpr const char* t2 = "E[T_m^2]";
inline constexpr const char* t4 = "E[T_m^4]";
inline constexpr const char* f_zero = "P(F=0)";
}  // namespace keys

//! Moments of one uniformly random permutation, by enumerating all r! of them.
ExactMomentTable single_trial_moments(int treatments);

//! Moments of F, S and T_m = sum_l S_l rho_{1l}, by enumerating all (r!)^n
//! configurations. Throws BudgetError past kEnumerationBudget.
ExactMomentTable joint_moments(int treatments, int trials, unsigned threads = 0);

//! Moments of one or two score coordinates via the n-fold convolution of the
//! single-trial law of a pair of centered ranks; cheap for any r <= 10.
ExactMomentTable column_moments(int treatments, int trials);

//! Joint law of two doubled column sums, reduced by the gcd of the counts.
std::map<std::pair<int, int>, BigInt> column_pair_law(int treatments, int trials);

//! Closed forms for the single-trial and joint moments, compared exactly.
CheckReport verify_lemma_formulas(int r_max, int n_max, unsigned threads = 0);

//! Numeric inequalities used in the bound derivation, with exact left sides.
CheckReport verify_inequalities(int r_max);

}  // namespace friedman
