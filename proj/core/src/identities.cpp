// SPDX-License-Identifier: Apache-2.0
#include "friedman/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "friedman/enumeration.hpp"
#include "friedman/errors.hpp"
#include "friedman/exact_oracle.hpp"
#include "friedman/rng.hpp"

namespace friedman {

namespace {

constexpr std::string_view kSuite = "identities";

// Dense table over {0..r-1}^k, symmetrised by summing over argument orders.
struct SymmetricTable {
  int r;
  int arity;
  std::vector<BigInt> values;

  std::size_t index(const std::array<int, 4>& x) const {
    std::size_t idx = 0;
    for (int i = 0; i < arity; ++i) idx = idx * r + x[i];
    return idx;
  }
  const BigInt& operator()(int a, int b, int c = 0, int d = 0) const {
    return values[index({a, b, c, d})];
  }
};

SymmetricTable random_symmetric(int r, int arity, Philox4x32& rng) {
  std::size_t size = 1;
  for (int i = 0; i < arity; ++i) size *= r;
  std::vector<long long> raw(size);
  for (auto& v : raw) v = static_cast<long long>(rng.uniform_below(201)) - 100;
  SymmetricTable t{r, arity, std::vector<BigInt>(size)};
  std::array<int, 4> x{};
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t rest = idx;
    for (int i = arity - 1; i >= 0; --i) {
      x[i] = static_cast<int>(rest % r);
      rest /= r;
    }
    std::array<int, 4> order{0, 1, 2, 3};
    BigInt sum = 0;
    do {
      std::array<int, 4> y{};
      for (int i = 0; i < arity; ++i) y[i] = x[order[i]];
      sum += raw[t.index(y)];
    } while (std::next_permutation(order.begin(), order.begin() + arity));
    t.values[idx] = sum;
  }
  return t;
}

template <class F>
IndexSplit split_two(int r, const F& f) {
  IndexSplit s{0, 0};
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j) s.full += f(l, j);
  for (int l = 0; l < r; ++l) s.decomposed += f(l, l);
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      if (l != j) s.decomposed += f(l, j);
  return s;
}

template <class F>
IndexSplit split_three(int r, const F& f) {
  IndexSplit s{0, 0};
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) s.full += f(l, j, k);
  for (int j = 0; j < r; ++j) s.decomposed += f(j, j, j);
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      if (l != j) s.decomposed += 3 * f(l, j, j);
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (l != j && j != k && l != k) s.decomposed += f(l, j, k);
  return s;
}

template <class F, class Value = BigInt>
std::pair<Value, Value> split_four(int r, const F& f) {
  Value full = 0, parts = 0;
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      for (int s = 0; s < r; ++s)
        for (int t = 0; t < r; ++t) full += f(l, j, s, t);
  for (int j = 0; j < r; ++j) parts += f(j, j, j, j);
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j) {
      if (l == j) continue;
      parts += 4 * f(l, j, j, j);
      parts += 3 * f(l, l, j, j);
    }
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      for (int s = 0; s < r; ++s) {
        if (l == j || j == s || l == s) continue;
        parts += 6 * f(l, j, s, s);
        for (int t = 0; t < r; ++t)
          if (t != l && t != j && t != s) parts += f(l, j, s, t);
      }
  return {full, parts};
}

BigInt binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

IndexSplit constant_four_index_split(int r) {
  auto [full, parts] = split_four(r, [](int, int, int, int) { return BigInt(1); });
  return {full, parts};
}

CheckReport verify_index_decomposition(int r, int trials, std::uint64_t seed) {
  if (r < 2) throw DomainError("index decomposition needs r >= 2");
  if (trials < 1) throw DomainError("index decomposition needs at least one trial");
  CheckReport rep;
  int agree2 = 0, agree3 = 0, agree4 = 0;
  for (int t = 0; t < trials; ++t) {
    Philox4x32 rng({seed, static_cast<std::uint64_t>(t)});
    const auto f2 = random_symmetric(r, 2, rng);
    const auto f3 = random_symmetric(r, 3, rng);
    const auto f4 = random_symmetric(r, 4, rng);
    const auto s2 = split_two(r, [&](int a, int b) { return f2(a, b); });
    const auto s3 = split_three(r, [&](int a, int b, int c) { return f3(a, b, c); });
    const auto s4 = split_four(r, [&](int a, int b, int c, int d) { return f4(a, b, c, d); });
    agree2 += s2.full == s2.decomposed;
    agree3 += s3.full == s3.decomposed;
    agree4 += s4.first == s4.second;
  }
  const std::string total = std::to_string(trials);
  auto add = [&](std::string name, int agree) {
    rep.add({std::string(kSuite), std::move(name), r, std::nullopt,
             agree == trials ? CheckStatus::pass : CheckStatus::fail, std::to_string(agree), total,
             "random symmetric functions in agreement"});
  };
  add("two-index split", agree2);
  add("three-index split", agree3);
  add("four-index split", agree4);

  const auto ones = constant_four_index_split(r);
  const BigInt r4 = BigInt(r) * r * r * r;
  rep.add({std::string(kSuite), "four-index split, f = 1", r, std::nullopt,
           ones.full == r4 && ones.decomposed == r4 ? CheckStatus::pass : CheckStatus::fail,
           ones.decomposed.str(), r4.str(), ""});

  // Squared four-point moments of one trial: the sum that gives E[beta^4].
  if (r <= 6) {
    const auto perms = doubled_permutations(r);
    std::vector<Rational> m4(static_cast<std::size_t>(r) * r * r * r);
    const BigInt denom = BigInt(perms.size()) * 16;
    for (int l = 0; l < r; ++l)
      for (int j = 0; j < r; ++j)
        for (int s = 0; s < r; ++s)
          for (int u = 0; u < r; ++u) {
            Int128 sum = 0;
            for (const auto& p : perms) sum += Int128(p[l]) * p[j] * p[s] * p[u];
            const std::size_t idx = ((static_cast<std::size_t>(l) * r + j) * r + s) * r + u;
            m4[idx] = make_rational(to_bigint(sum), denom);
          }
    auto f = [&](int l, int j, int s, int u) {
      const Rational& v = m4[((static_cast<std::size_t>(l) * r + j) * r + s) * r + u];
      return v * v;
    };
    auto [full, parts] = split_four<decltype(f), Rational>(r, f);
    rep.expect_equal(kSuite, "four-index split, f = E[rho_l rho_j rho_s rho_t]^2", r, std::nullopt, full, parts);
  }
  return rep;
}

Rational two_treatment_zero_probability(int k) {
  if (k < 1) throw DomainError("zero-atom formula needs k >= 1");
  return make_rational(binomial(2 * k, k), BigInt(1) << (2 * k));
}

CheckReport verify_zero_atom(int k_max, unsigned threads) {
  CheckReport rep;
  for (int k = 1; k <= k_max; ++k) {
    const int n = 2 * k;
    ExactLaw law;
    try {
      law = exact_statistic_law(2, n, threads);
    } catch (const BudgetError& e) {
      rep.skip(kSuite, "P(F=0) = C(2k,k)/4^k", 2, n, e.what());
      continue;
    }
    const auto it = law.atoms.find(0);
    const Rational exact = make_rational(BigInt(it == law.atoms.end() ? 0 : it->second), BigInt(law.total));
    const Rational closed = two_treatment_zero_probability(k);
    rep.expect_equal(kSuite, "P(F=0) = C(2k,k)/4^k", 2, n, exact, closed);
    const double stirling = std::sqrt(2.0 / (std::numbers::pi * n));
    rep.expect_at_most(kSuite, "|P(F=0) - sqrt(2/(pi n))| <= 0.3/n", 2, n, std::abs(to_double(closed) - stirling),
                       0.3 / n);
  }
  return rep;
}

}  // namespace friedman
