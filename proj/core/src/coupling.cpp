// SPDX-License-Identifier: Apache-2.0
#include "friedman/coupling.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "friedman/enumeration.hpp"
#include "friedman/errors.hpp"
#include "friedman/montecarlo.hpp"
#include "friedman/rational.hpp"

namespace friedman {

namespace {

constexpr std::string_view kSuite = "coupling";

// Draws per configuration: M in n trials, K and L in r treatments each.
std::uint64_t draws(int r, int n) { return static_cast<std::uint64_t>(n) * r * r; }

// Doubled column-sum increments for the draw (m, k, l): only k and l move.
inline void increment(const ConfigurationView& v, int m, int k, int l, std::vector<Int128>& delta) {
  std::fill(delta.begin(), delta.end(), 0);
  if (k == l) return;
  const int d = v.rows[m][k] - v.rows[m][l];
  delta[k] = -d;
  delta[l] = d;
}

struct Tally {
  std::uint64_t total = 0;
  std::uint64_t agree = 0;
  Tally& operator+=(const Tally& o) {
    total += o.total;
    agree += o.agree;
    return *this;
  }
};

void add_tally(CheckReport& rep, std::string identity, int r, int n, const Tally& t, std::string unit) {
  rep.add({std::string(kSuite), std::move(identity), r, n,
           t.agree == t.total ? CheckStatus::pass : CheckStatus::fail, std::to_string(t.agree),
           std::to_string(t.total), std::move(unit)});
}

}  // namespace

PairSample swap_pair(const CenteredRanks& ranks, int trial, int first, int second) {
  const int n = ranks.trials();
  const int r = ranks.treatments();
  if (trial < 0 || trial >= n || first < 0 || first >= r || second < 0 || second >= r)
    throw DomainError("swap indices out of range");
  PairSample out;
  out.base = score_vector(ranks);
  out.trial = trial;
  out.first = first;
  out.second = second;
  out.swapped = out.base;
  const int d = ranks.twice(trial, first) - ranks.twice(trial, second);
  out.swapped.twice_column_sums[first] -= d;
  out.swapped.twice_column_sums[second] += d;
  const double half_scale = 0.5 * score_scale(n, r);
  std::int64_t ss = 0;
  for (int j = 0; j < r; ++j) {
    const std::int64_t c = out.swapped.twice_column_sums[j];
    out.swapped.s[j] = half_scale * static_cast<double>(c);
    ss += c * c;
  }
  out.swapped.f_r = statistic_from_twice_sums(ss, n, r);
  return out;
}

PairSample sample_pair(const RankMatrix& ranks, Philox4x32& rng) {
  const auto m = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(ranks.trials())));
  const auto k = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(ranks.treatments())));
  const auto l = static_cast<int>(rng.uniform_below(static_cast<std::uint32_t>(ranks.treatments())));
  return swap_pair(center(ranks), m, k, l);
}

CheckReport verify_regression(int r, int n, unsigned threads) {
  auto tally = reduce_configurations<Tally>(
      r, n,
      [](Tally& t, const ConfigurationView& v) {
        const int rr = v.treatments;
        std::vector<Int128> delta(rr), sum(rr, 0);
        for (int m = 0; m < v.trials; ++m)
          for (int k = 0; k < rr; ++k)
            for (int l = 0; l < rr; ++l) {
              increment(v, m, k, l, delta);
              for (int i = 0; i < rr; ++i) sum[i] += delta[i];
            }
        bool ok = true;
        for (int i = 0; i < rr; ++i) ok = ok && sum[i] == -2 * Int128(rr) * v.column_sums[i];
        t.total += 1;
        t.agree += ok;
      },
      threads, draws(r, n));
  CheckReport rep;
  add_tally(rep, "sum over draws of (C' - C) = -2 r C", r, n, tally, "configurations");
  rep.add({std::string(kSuite), "regression coefficient", r, n, CheckStatus::info,
           to_string(Rational(-2 * r, static_cast<long long>(r) * r * n)),
           to_string(Rational(-2, static_cast<long long>(r) * n)), "sum / (n r^2) against -2/(rn)"});
  return rep;
}

namespace {

struct MomentSums {
  std::vector<Int128> m;
  std::uint64_t draws = 0;
  MomentSums& operator+=(const MomentSums& o) {
    if (m.empty()) m.assign(o.m.size(), 0);
    for (std::size_t i = 0; i < o.m.size(); ++i) m[i] += o.m[i];
    draws += o.draws;
    return *this;
  }
};

}  // namespace

CheckReport verify_increment_moments(int r, int n, unsigned threads) {
  auto sums = reduce_configurations<MomentSums>(
      r, n,
      [](MomentSums& acc, const ConfigurationView& v) {
        const int rr = v.treatments;
        if (acc.m.empty()) acc.m.assign(static_cast<std::size_t>(rr) * rr, 0);
        std::vector<Int128> delta(rr);
        for (int m = 0; m < v.trials; ++m)
          for (int k = 0; k < rr; ++k)
            for (int l = 0; l < rr; ++l) {
              increment(v, m, k, l, delta);
              for (int j = 0; j < rr; ++j)
                for (int u = 0; u < rr; ++u) acc.m[static_cast<std::size_t>(j) * rr + u] += delta[j] * delta[u];
              acc.draws += 1;
            }
      },
      threads, draws(r, n));
  // Delta S = sqrt(3 / (r (r + 1) n)) * Delta C.
  const Rational scale(3, static_cast<long long>(r) * (r + 1) * n);
  auto moment = [&](int j, int u) {
    return scale * make_rational(to_bigint(sums.m[static_cast<std::size_t>(j) * r + u]), BigInt(sums.draws));
  };
  const Rational diag(4 * (r - 1), static_cast<long long>(r) * r * n);
  const Rational off(-4, static_cast<long long>(r) * r * n);
  CheckReport rep;
  rep.expect_equal(kSuite, "E[(S'_j - S_j)^2] = 4 (r - 1) / (r^2 n)", r, n, moment(0, 0), diag);
  rep.expect_equal(kSuite, "E[(S'_j - S_j)(S'_u - S_u)] = -4 / (r^2 n)", r, n, moment(0, 1), off);
  Tally all;
  for (int j = 0; j < r; ++j)
    for (int u = 0; u < r; ++u) {
      all.total += 1;
      all.agree += moment(j, u) == (j == u ? diag : off);
    }
  add_tally(rep, "E[(S' - S)(S' - S)^T] = 4 Sigma / (r n)", r, n, all, "matrix entries");
  return rep;
}

namespace {

struct PatternTally {
  std::array<Tally, 6> t;
  PatternTally& operator+=(const PatternTally& o) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += o.t[i];
    return *this;
  }
};

enum PatternCheck {
  quartic_support,   // zero unless every index is K or L
  quartic_pattern,   // zero unless all equal or two K and two L
  quartic_signed,    // equals the signed product of +-delta
  cubic_support,     // zero unless every index is K or L (so two indices match)
  cubic_display,     // the printed value with +delta^3 for both all-equal cases
  cubic_signed,
};

}  // namespace

CheckReport verify_triple_structure(int r, int n, unsigned threads) {
  auto tally = reduce_configurations<PatternTally>(
      r, n,
      [](PatternTally& acc, const ConfigurationView& v) {
        const int rr = v.treatments;
        std::vector<Int128> delta(rr);
        for (int m = 0; m < v.trials; ++m)
          for (int k = 0; k < rr; ++k)
            for (int l = 0; l < rr; ++l) {
              increment(v, m, k, l, delta);
              // With K = k and L = l, delta_K = x_l - x_k and delta_L = -(x_l - x_k).
              const Int128 d = k == l ? 0 : v.rows[m][l] - v.rows[m][k];
              auto sign = [&](int idx) { return idx == k ? 1 : idx == l ? -1 : 0; };
              bool ok[6] = {true, true, true, true, true, true};
              for (int j = 0; j < rr; ++j)
                for (int u = 0; u < rr; ++u)
                  for (int s = 0; s < rr; ++s) {
                    const Int128 p3 = delta[j] * delta[u] * delta[s];
                    const int sg3 = sign(j) * sign(u) * sign(s);
                    const bool in3 = sg3 != 0 && k != l;
                    ok[cubic_support] = ok[cubic_support] && (p3 == 0 || (in3 && (j == u || u == s || j == s)));
                    ok[cubic_signed] = ok[cubic_signed] && p3 == sg3 * d * d * d;
                    Int128 shown = 0;
                    if (in3) {
                      const int ks = (j == k) + (u == k) + (s == k);
                      if (ks == 3 || ks == 0) shown = 1;  // all equal to k or to l
                      else if (ks == 2) shown = -1;
                      else shown = 1;
                    }
                    ok[cubic_display] = ok[cubic_display] && p3 == shown * d * d * d;
                    for (int w = 0; w < rr; ++w) {
                      const Int128 p4 = p3 * delta[w];
                      const int sg4 = sg3 * sign(w);
                      const bool in4 = sg4 != 0 && k != l;
                      const int ks = (j == k) + (u == k) + (s == k) + (w == k);
                      const bool listed = in4 && (ks == 4 || ks == 0 || ks == 2);
                      ok[quartic_support] = ok[quartic_support] && (p4 == 0 || in4);
                      ok[quartic_pattern] = ok[quartic_pattern] && (p4 == 0 || listed) &&
                                            p4 == (listed ? d * d * d * d : Int128(0));
                      ok[quartic_signed] = ok[quartic_signed] && p4 == sg4 * d * d * d * d;
                    }
                  }
              for (int c = 0; c < 6; ++c) {
                acc.t[c].total += 1;
                acc.t[c].agree += ok[c];
              }
            }
      },
      threads, draws(r, n));
  CheckReport rep;
  add_tally(rep, "quartic increment product vanishes unless {j,u,v,w} in {K,L}", r, n, tally.t[quartic_support], "draws");
  add_tally(rep, "quartic increment product = c^4 delta^4 (all equal, or two K and two L), else 0", r, n,
            tally.t[quartic_pattern], "draws");
  add_tally(rep, "quartic increment product = c^4 delta^4 sgn(j) sgn(u) sgn(v) sgn(w)", r, n, tally.t[quartic_signed],
            "draws");
  add_tally(rep, "cubic increment product vanishes unless two indices match within {K,L}", r, n,
            tally.t[cubic_support], "draws");
  add_tally(rep, "cubic increment product = c^3 delta^3 (+1 all equal, -1 two K one L, +1 two L one K)", r, n,
            tally.t[cubic_display], "draws");
  add_tally(rep, "cubic increment product = c^3 delta^3 sgn(j) sgn(u) sgn(v)", r, n, tally.t[cubic_signed], "draws");
  return rep;
}

namespace {

struct PairHistogram {
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> counts;
  PairHistogram& operator+=(const PairHistogram& o) {
    for (const auto& [k, v] : o.counts) counts[k] += v;
    return *this;
  }
};

}  // namespace

CheckReport verify_exchangeability(int r, int n, unsigned threads) {
  auto hist = reduce_configurations<PairHistogram>(
      r, n,
      [](PairHistogram& h, const ConfigurationView& v) {
        const int rr = v.treatments;
        std::int64_t ss = 0;
        for (int c : v.column_sums) ss += static_cast<std::int64_t>(c) * c;
        for (int m = 0; m < v.trials; ++m)
          for (int k = 0; k < rr; ++k)
            for (int l = 0; l < rr; ++l) {
              const std::int64_t d = v.rows[m][k] - v.rows[m][l];
              const std::int64_t ck = v.column_sums[k] - d;
              const std::int64_t cl = v.column_sums[l] + d;
              std::int64_t ss2 = ss;
              if (k != l)
                ss2 += ck * ck + cl * cl - static_cast<std::int64_t>(v.column_sums[k]) * v.column_sums[k] -
                       static_cast<std::int64_t>(v.column_sums[l]) * v.column_sums[l];
              ++h.counts[{ss, ss2}];
            }
      },
      threads, draws(r, n));
  Tally t;
  for (const auto& [key, count] : hist.counts) {
    auto it = hist.counts.find({key.second, key.first});
    t.total += 1;
    t.agree += it != hist.counts.end() && it->second == count;
  }
  CheckReport rep;
  add_tally(rep, "joint law of (F, F') is symmetric", r, n, t, "histogram cells");
  return rep;
}

namespace {

struct SmoothCase {
  std::string name;
  std::function<void(const std::vector<double>&, std::vector<double>&)> grad;
  // Sigma-contracted Hessian, sum_{jk} sigma_jk d_j d_k f.
  std::function<double(const std::vector<double>&)> contracted_hessian;
};

std::vector<SmoothCase> smooth_cases(int r) {
  const double diag = (r - 1.0) / r, off = -1.0 / r;
  std::vector<SmoothCase> cases;
  cases.push_back({"f = (sum s^2)^2",
                   [](const std::vector<double>& s, std::vector<double>& g) {
                     double w = 0;
                     for (double x : s) w += x * x;
                     for (std::size_t j = 0; j < s.size(); ++j) g[j] = 4 * w * s[j];
                   },
                   [r](const std::vector<double>& s) {
                     double w = 0;
                     for (double x : s) w += x * x;
                     return 4 * w * (r - 1) + 8 * w;  // s^T Sigma s = w when sum s = 0
                   }});
  cases.push_back({"f = sum s^4",
                   [](const std::vector<double>& s, std::vector<double>& g) {
                     for (std::size_t j = 0; j < s.size(); ++j) g[j] = 4 * s[j] * s[j] * s[j];
                   },
                   [diag](const std::vector<double>& s) {
                     double acc = 0;
                     for (double x : s) acc += 12 * diag * x * x;
                     return acc;
                   }});
  cases.push_back({"f = sum sin(s)",
                   [](const std::vector<double>& s, std::vector<double>& g) {
                     for (std::size_t j = 0; j < s.size(); ++j) g[j] = std::cos(s[j]);
                   },
                   [diag](const std::vector<double>& s) {
                     double acc = 0;
                     for (double x : s) acc -= diag * std::sin(x);
                     return acc;
                   }});
  cases.push_back({"f = s_1^3 s_2",
                   [](const std::vector<double>& s, std::vector<double>& g) {
                     std::fill(g.begin(), g.end(), 0.0);
                     g[0] = 3 * s[0] * s[0] * s[1];
                     g[1] = s[0] * s[0] * s[0];
                   },
                   [diag, off](const std::vector<double>& s) { return diag * 6 * s[0] * s[1] + 2 * off * 3 * s[0] * s[0]; }});
  return cases;
}

struct PairSums {
  std::vector<double> lhs, rhs, printed;
  std::uint64_t configs = 0;
  PairSums& operator+=(const PairSums& o) {
    if (lhs.empty()) lhs.assign(o.lhs.size(), 0.0), rhs.assign(o.rhs.size(), 0.0), printed.assign(o.printed.size(), 0.0);
    for (std::size_t i = 0; i < o.lhs.size(); ++i) {
      lhs[i] += o.lhs[i];
      rhs[i] += o.rhs[i];
      printed[i] += o.printed[i];
    }
    configs += o.configs;
    return *this;
  }
};

}  // namespace

CheckReport verify_pair_identity(int r, int n, unsigned threads) {
  const auto cases = smooth_cases(r);
  const double half_scale = 0.5 * score_scale(n, r);
  auto sums = reduce_configurations<PairSums>(
      r, n,
      [&](PairSums& acc, const ConfigurationView& v) {
        const int rr = v.treatments;
        const std::size_t nc = cases.size();
        if (acc.lhs.empty()) acc.lhs.assign(nc, 0.0), acc.rhs.assign(nc, 0.0), acc.printed.assign(nc, 0.0);
        std::vector<double> s(rr), s2(rr), g(rr), g2(rr);
        for (int j = 0; j < rr; ++j) s[j] = half_scale * v.column_sums[j];
        for (std::size_t c = 0; c < nc; ++c) {
          cases[c].grad(s, g);
          double wg = 0;
          for (int j = 0; j < rr; ++j) wg += s[j] * g[j];
          acc.lhs[c] += wg;
          acc.printed[c] += cases[c].contracted_hessian(s) - wg;
          double pair = 0;
          for (int m = 0; m < v.trials; ++m)
            for (int k = 0; k < rr; ++k)
              for (int l = 0; l < rr; ++l) {
                if (k == l) continue;
                const int d = v.rows[m][k] - v.rows[m][l];
                s2 = s;
                s2[k] -= half_scale * d;
                s2[l] += half_scale * d;
                cases[c].grad(s2, g2);
                pair += (s2[k] - s[k]) * (g2[k] - g[k]) + (s2[l] - s[l]) * (g2[l] - g[l]);
              }
          acc.rhs[c] += pair / (static_cast<double>(v.trials) * rr * rr);
        }
        acc.configs += 1;
      },
      threads, draws(r, n));
  CheckReport rep;
  const double factor = r * n / 4.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const double lhs = sums.lhs[c] / sums.configs;
    const double rhs = factor * sums.rhs[c] / sums.configs;
    rep.expect_near(kSuite, "E[W^T grad f(W)] = (rn/4) E[(W' - W)^T (grad f(W') - grad f(W))], " + cases[c].name, r, n,
                    lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
    const double printed = sums.printed[c] / sums.configs;
    rep.add({std::string(kSuite), "E[grad^T Sigma grad f(W) - W^T grad f(W)] vs the same right side, " + cases[c].name, r,
             n, CheckStatus::info, format_double(printed), format_double(rhs),
             "differs in general; equals E[grad^T Sigma grad f] - right side"});
  }
  return rep;
}

CheckReport verify_increment_moments_mc(int r, int n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 2) throw DomainError("need at least two samples");
  const std::uint64_t blocks = (samples + kBlockSize - 1) / kBlockSize;
  struct Partial {
    std::vector<double> sum, sum_sq;
  };
  std::vector<Partial> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    Philox4x32 rng({seed, b});
    Partial p{std::vector<double>(r, 0.0), std::vector<double>(r, 0.0)};
    const std::uint64_t begin = b * kBlockSize, end = std::min(samples, begin + kBlockSize);
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto ranks = sample_rank_matrix(n, r, rng);
      const auto pair = sample_pair(ranks, rng);
      for (int j = 0; j < r; ++j) {
        const double x = pair.swapped.s[j] - pair.base.s[j] + 2.0 / (r * n) * pair.base.s[j];
        p.sum[j] += x;
        p.sum_sq[j] += x * x;
      }
    }
    partial[b] = std::move(p);
  });
  std::vector<double> sum(r, 0.0), sum_sq(r, 0.0);
  for (const auto& p : partial)
    for (int j = 0; j < r; ++j) sum[j] += p.sum[j], sum_sq[j] += p.sum_sq[j];
  double worst = 0.0;
  const double count = static_cast<double>(samples);
  for (int j = 0; j < r; ++j) {
    const double mean = sum[j] / count;
    const double var = (sum_sq[j] - count * mean * mean) / (count - 1);
    worst = std::max(worst, std::abs(mean) / std::sqrt(var / count));
  }
  CheckReport rep;
  rep.expect_at_most(kSuite, "max_j |mean of (S' - S) + 2 S / (rn)| in standard errors", r, n, worst, 5.0);
  return rep;
}

}  // namespace friedman
