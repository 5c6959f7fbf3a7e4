// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "friedman/bounds.hpp"
#include "friedman/chisq.hpp"
#include "friedman/coupling.hpp"
#include "friedman/csv.hpp"
#include "friedman/errors.hpp"
#include "friedman/exact_oracle.hpp"
#include "friedman/identities.hpp"
#include "friedman/montecarlo.hpp"
#include "friedman/stein.hpp"

namespace friedman::cli {

namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

json bound_json(const BoundReport& b) {
  json j;
  j["trials"] = b.trials;
  j["treatments"] = b.treatments;
  j["norms"] = {{"h1", b.norms.h1}, {"h2", b.norms.h2}, {"h3", b.norms.h3}};
  j["theorem1"] = b.theorem1;
  if (b.coefficients) {
    const auto& c = *b.coefficients;
    j["coefficients"] = {{"a_n", c.a_n}, {"b_n", c.b_n}, {"c_t", c.c_t},
                         {"beta1", c.beta1}, {"beta2", c.beta2}, {"beta3", c.beta3}};
  } else {
    j["coefficients"] = nullptr;
  }
  j["sharp"] = optional_number(b.sharp);
  j["trivial"] = b.trivial;
  j["two_treatment_smooth"] = optional_number(b.two_treatment_smooth);
  j["two_treatment_wasserstein"] = optional_number(b.two_treatment_wasserstein);
  j["kolmogorov"] = b.kolmogorov;
  j["kolmogorov_raw"] = b.kolmogorov_raw;
  j["jensen"] = b.jensen;
  j["selected"] = b.selected;
  j["selected_name"] = b.selected_name;
  return j;
}

// ---- test -----------------------------------------------------------------

struct TestOptions {
  std::string file;
  std::string format = "scores";
  bool json = false;
};

int cmd_test(const TestOptions& o, std::ostream& out) {
  const auto ranks = read_rank_csv(std::filesystem::path(o.file), parse_input_format(o.format));
  const int n = ranks.trials(), r = ranks.treatments();
  const double f = score_vector(ranks).f_r;
  const double p = chisq_sf(chisq_law(r - 1), f);
  const double raw = bound_kolmogorov_raw(n, r);
  const double d = std::min(1.0, raw);
  const double lo = std::max(0.0, p - d), hi = std::min(1.0, p + d);
  if (o.json) {
    json j;
    j["trials"] = n;
    j["treatments"] = r;
    j["dof"] = r - 1;
    j["statistic"] = f;
    j["p_value"] = p;
    j["kolmogorov_bound"] = d;
    j["kolmogorov_bound_raw"] = raw;
    j["certified_interval"] = {lo, hi};
    j["bounds"] = bound_json(make_bound_report(n, r, {}));
    out << j.dump() << '\n';
  } else {
    out << "trials            " << n << '\n'
        << "treatments        " << r << '\n'
        << "statistic         " << fixed(f) << '\n'
        << "p-value (chi2 " << r - 1 << ")  " << fixed(p) << '\n'
        << "Kolmogorov bound  " << fixed(d) << " (raw " << fixed(raw) << ")\n"
        << "certified p-value [" << fixed(lo) << ", " << fixed(hi) << "]\n";
  }
  return ok;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsOptions {
  int n = 0;
  int r = 0;
  double h1 = 1.0, h2 = 1.0, h3 = 1.0;
  bool json = false;
};

int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  const auto b = make_bound_report(o.n, o.r, {o.h1, o.h2, o.h3});
  if (o.json) {
    out << bound_json(b).dump() << '\n';
    return ok;
  }
  auto line = [&](const char* name, const std::optional<double>& v) {
    out << std::left << std::setw(28) << name << (v ? fixed(*v) : std::string("n/a")) << '\n';
  };
  out << "n = " << b.trials << ", r = " << b.treatments << ", ||h'|| = " << fixed(b.norms.h1)
      << ", ||h''|| = " << fixed(b.norms.h2) << ", ||h'''|| = " << fixed(b.norms.h3) << '\n';
  line("compact smooth bound", b.theorem1);
  line("refined smooth bound", b.sharp);
  if (b.coefficients)
    out << "  beta1 = " << fixed(b.coefficients->beta1) << ", beta2 = " << fixed(b.coefficients->beta2)
        << ", beta3 = " << fixed(b.coefficients->beta3) << '\n';
  line("trivial bound", b.trivial);
  line("two-treatment smooth", b.two_treatment_smooth);
  line("two-treatment Wasserstein", b.two_treatment_wasserstein);
  line("Kolmogorov (clamped)", b.kolmogorov);
  line("Kolmogorov (raw)", b.kolmogorov_raw);
  out << std::left << std::setw(28) << "earlier Kolmogorov rate" << b.jensen << '\n';
  out << std::left << std::setw(28) << "selected" << fixed(b.selected) << " (" << b.selected_name << ")\n";
  return ok;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string suite = "all";
  int r_max = 6;
  int n_max = 4;
  int p_max = 10;
  std::uint64_t seed = 20240101;
  unsigned threads = 0;
};

CheckReport guarded(const std::string& suite, const std::string& identity, int r, int n,
                    const std::function<CheckReport()>& check) {
  try {
    return check();
  } catch (const BudgetError& e) {
    CheckReport rep;
    rep.skip(suite, identity, r, n, e.what());
    return rep;
  }
}

CheckReport run_suite(const std::string& name, const VerifyOptions& o) {
  CheckReport rep;
  if (name == "lemmas") {
    rep.append(verify_lemma_formulas(o.r_max, o.n_max, o.threads));
    rep.append(verify_inequalities(o.r_max));
  } else if (name == "coupling") {
    for (int r = 2; r <= o.r_max; ++r)
      for (int n = 1; n <= o.n_max; ++n) {
        rep.append(guarded("coupling", "regression", r, n, [&] { return verify_regression(r, n, o.threads); }));
        rep.append(guarded("coupling", "increment moments", r, n,
                           [&] { return verify_increment_moments(r, n, o.threads); }));
        rep.append(guarded("coupling", "increment products", r, n,
                           [&] { return verify_triple_structure(r, n, o.threads); }));
        rep.append(guarded("coupling", "exchangeability", r, n,
                           [&] { return verify_exchangeability(r, n, o.threads); }));
        rep.append(guarded("coupling", "pair identity", r, n, [&] { return verify_pair_identity(r, n, o.threads); }));
      }
  } else if (name == "stein") {
    rep.append(verify_stein_suite(o.p_max, o.threads));
  } else if (name == "identities") {
    for (int r = 2; r <= o.r_max; ++r) rep.append(verify_index_decomposition(r, 100, o.seed));
    rep.append(verify_zero_atom(6, o.threads));
  } else {
    for (const char* s : {"lemmas", "coupling", "stein", "identities"}) rep.append(run_suite(s, o));
  }
  return rep;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto rep = run_suite(o.suite, o);
  for (const auto& e : rep.entries()) {
    json j;
    j["suite"] = e.suite;
    j["identity"] = e.identity;
    j["r"] = e.r;
    j["n"] = e.n ? json(*e.n) : json(nullptr);
    j["status"] = std::string(to_string(e.status));
    j["lhs"] = e.lhs;
    j["rhs"] = e.rhs;
    if (!e.note.empty()) j["note"] = e.note;
    out << j.dump() << '\n';
  }
  return rep.passed() ? ok : check_failed;
}

// ---- distance -------------------------------------------------------------

struct DistanceOptions {
  int n = 0;
  int r = 0;
  std::string metric = "kolmogorov";
  double t = 1.0;
  std::string mode = "auto";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20240101;
  unsigned threads = 0;
  bool json = false;
};

RateMode parse_mode(const std::string& mode) {
  if (mode == "exact") return RateMode::exact;
  if (mode == "mc") return RateMode::monte_carlo;
  return RateMode::automatic;
}

bool use_exact(RateMode mode, int r, int n) {
  return mode == RateMode::exact ||
         (mode == RateMode::automatic && configuration_count(r, n) <= kEnumerationBudget);
}

int cmd_distance(const DistanceOptions& o, std::ostream& out) {
  const RateMode mode = parse_mode(o.mode);
  const bool exact = use_exact(mode, o.r, o.n);
  DistanceEstimate est;
  std::optional<double> bound, bound_raw;
  std::string label = o.metric;
  if (o.metric == "kolmogorov") {
    est = exact ? exact_kolmogorov(o.n, o.r, o.threads) : estimate_kolmogorov(o.n, o.r, o.samples, o.seed, o.threads);
    bound_raw = bound_kolmogorov_raw(o.n, o.r);
    bound = std::min(1.0, *bound_raw);
  } else if (o.metric == "wasserstein") {
    est = exact ? exact_wasserstein(o.n, o.r, o.threads) : estimate_wasserstein(o.n, o.r, o.samples, o.seed, o.threads);
    if (o.r == 2) bound = bound_two_treatments(o.n, TwoTreatmentKind::wasserstein);
  } else {
    const auto h = test_function_by_name(o.metric, o.t);
    if (!h) throw DomainError("unknown metric '" + o.metric + "'");
    label = h->name;
    if (exact) {
      est = {exact_smooth_gap(o.n, o.r, *h, o.threads), 0.0, configuration_count(o.r, o.n), "exact-enumeration"};
    } else {
      est = estimate_smooth_gap(o.n, o.r, *h, o.samples, o.seed, o.threads);
    }
    if (std::isfinite(h->norm(1)) && std::isfinite(h->norm(2)) && std::isfinite(h->norm(3)))
      bound = make_bound_report(o.n, o.r, {h->norm(1), h->norm(2), h->norm(3)}).selected;
  }
  if (o.json) {
    json j;
    j["trials"] = o.n;
    j["treatments"] = o.r;
    j["metric"] = label;
    j["value"] = est.value;
    j["half_width"] = est.half_width;
    j["method"] = est.method;
    j["samples"] = est.samples;
    j["seed"] = exact ? json(nullptr) : json(o.seed);
    j["bound"] = optional_number(bound);
    if (bound_raw) j["bound_raw"] = *bound_raw;
    out << j.dump() << '\n';
  } else {
    out << label << " distance, n = " << o.n << ", r = " << o.r << '\n'
        << "value      " << fixed(est.value) << '\n'
        << "half-width " << fixed(est.half_width) << " (99%)\n"
        << "method     " << est.method << " (" << est.samples << (exact ? " configurations" : " samples") << ")\n"
        << "bound      " << (bound ? fixed(*bound) : std::string("n/a")) << '\n';
  }
  return bound && est.value - est.half_width > *bound ? check_failed : ok;
}

// ---- rate -----------------------------------------------------------------

struct RateOptions {
  int r = 0;
  std::string h = "cos";
  double t = 1.0;
  std::vector<int> ns;
  std::string mode = "auto";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 20240101;
  unsigned threads = 0;
  bool json = false;
  bool csv = false;
};

int cmd_rate(const RateOptions& o, std::ostream& out) {
  const auto h = test_function_by_name(o.h, o.t);
  if (!h) throw DomainError("unknown test function '" + o.h + "'");
  const auto rows = rate_experiment(o.r, o.ns, *h, parse_mode(o.mode), o.samples, o.seed, o.threads);
  bool all_within = true;
  if (o.csv) out << "n,gap,half_width,n_gap,method,selected_bound,within_bound\n";
  for (const auto& row : rows) {
    all_within = all_within && row.within_bound;
    const std::optional<double> sel = row.bounds ? std::optional<double>(row.bounds->selected) : std::nullopt;
    if (o.json) {
      json j;
      j["treatments"] = o.r;
      j["test_function"] = h->name;
      j["trials"] = row.trials;
      j["gap"] = row.gap;
      j["half_width"] = row.half_width;
      j["n_gap"] = row.scaled_gap;
      j["method"] = row.method;
      j["bounds"] = row.bounds ? bound_json(*row.bounds) : json(nullptr);
      j["within_bound"] = row.within_bound;
      out << j.dump() << '\n';
    } else if (o.csv) {
      out << row.trials << ',' << format_double(row.gap) << ',' << format_double(row.half_width) << ','
          << format_double(row.scaled_gap) << ',' << row.method << ',' << (sel ? format_double(*sel) : "") << ','
          << (row.within_bound ? "true" : "false") << '\n';
    } else {
      out << "n = " << std::setw(5) << row.trials << "  gap = " << std::setw(12) << fixed(row.gap)
          << "  n*gap = " << std::setw(10) << fixed(row.scaled_gap) << "  bound = "
          << (sel ? fixed(*sel) : std::string("n/a")) << "  [" << row.method << "]"
          << (row.within_bound ? "" : "  EXCEEDS BOUND") << '\n';
    }
  }
  return all_within ? ok : check_failed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Friedman rank test with explicit chi-square approximation bounds", "friedman"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "friedman 0.1.0");

  TestOptions test_o;
  auto* test = app.add_subcommand("test", "Friedman statistic, p-value and certified p-value interval");
  test->add_option("file", test_o.file, "CSV file, one trial per row")->required();
  test->add_option("--format", test_o.format, "Cell contents")->check(CLI::IsMember({"scores", "ranks"}));
  test->add_flag("--json", test_o.json, "Emit JSON");

  BoundsOptions bounds_o;
  auto* bounds = app.add_subcommand("bounds", "Explicit distributional bounds for given n and r");
  bounds->add_option("--n", bounds_o.n, "Number of trials")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--r", bounds_o.r, "Number of treatments")->required()->check(CLI::Range(2, 1000000));
  bounds->add_option("--h1", bounds_o.h1, "sup |h'|")->check(CLI::NonNegativeNumber);
  bounds->add_option("--h2", bounds_o.h2, "sup |h''|")->check(CLI::NonNegativeNumber);
  bounds->add_option("--h3", bounds_o.h3, "sup |h'''|")->check(CLI::NonNegativeNumber);
  bounds->add_flag("--json", bounds_o.json, "Emit JSON");

  VerifyOptions verify_o;
  auto* verify = app.add_subcommand("verify", "Exact and numerical identity checks, one JSON line per check");
  verify->add_option("--suite", verify_o.suite)
      ->check(CLI::IsMember({"lemmas", "coupling", "stein", "identities", "all"}));
  verify->add_option("--r-max", verify_o.r_max, "Largest treatment count")->check(CLI::Range(2, 10));
  verify->add_option("--n-max", verify_o.n_max, "Largest trial count")->check(CLI::Range(1, 64));
  verify->add_option("--p-max", verify_o.p_max, "Largest degrees of freedom for the Stein suite")
      ->check(CLI::Range(1, 50));
  verify->add_option("--seed", verify_o.seed, "Seed for randomised checks");
  verify->add_option("--threads", verify_o.threads, "Worker threads (0: FRIEDMAN_THREADS or all cores)");

  DistanceOptions dist_o;
  auto* distance = app.add_subcommand("distance", "Distance between the statistic and its chi-square limit");
  distance->add_option("--n", dist_o.n, "Number of trials")->required()->check(CLI::PositiveNumber);
  distance->add_option("--r", dist_o.r, "Number of treatments")->required()->check(CLI::Range(2, 12));
  distance->add_option("--metric", dist_o.metric)
      ->check(CLI::IsMember({"kolmogorov", "wasserstein", "cos", "sin", "x", "x2"}));
  distance->add_option("--t", dist_o.t, "Frequency for cos and sin");
  distance->add_option("--mode", dist_o.mode)->check(CLI::IsMember({"exact", "mc", "auto"}));
  distance->add_option("--samples", dist_o.samples, "Monte Carlo sample size")->check(CLI::Range(2.0, 1e12));
  distance->add_option("--seed", dist_o.seed);
  distance->add_option("--threads", dist_o.threads);
  distance->add_flag("--json", dist_o.json, "Emit JSON");

  RateOptions rate_o;
  auto* rate = app.add_subcommand("rate", "Smooth-function gap as n grows, against the bounds");
  rate->set_help_flag("--help", "Print this help message and exit");
  rate->add_option("--r", rate_o.r, "Number of treatments")->required()->check(CLI::Range(2, 12));
  rate->add_option("--h", rate_o.h)->check(CLI::IsMember({"cos", "sin", "x", "x2"}));
  rate->add_option("--t", rate_o.t, "Frequency for cos and sin");
  rate->add_option("--n", rate_o.ns, "Trial counts")->required()->delimiter(',')->check(CLI::PositiveNumber);
  rate->add_option("--mode", rate_o.mode)->check(CLI::IsMember({"exact", "mc", "auto"}));
  rate->add_option("--samples", rate_o.samples)->check(CLI::Range(2.0, 1e12));
  rate->add_option("--seed", rate_o.seed);
  rate->add_option("--threads", rate_o.threads);
  auto* rate_json = rate->add_flag("--json", rate_o.json, "Emit JSON lines");
  rate->add_flag("--csv", rate_o.csv, "Emit CSV")->excludes(rate_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*test) return cmd_test(test_o, out);
    if (*bounds) return cmd_bounds(bounds_o, out);
    if (*verify) return cmd_verify(verify_o, out);
    if (*distance) return cmd_distance(dist_o, out);
    if (*rate) return cmd_rate(rate_o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const TieError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const NonFiniteError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return usage_error;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("friedman");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace friedman::cli
