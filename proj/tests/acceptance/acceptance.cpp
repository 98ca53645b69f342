// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. `cmsa_acceptance 3 5` runs criteria 3 and 5 only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmsa/cmsa.hpp"
#include "cmsa/json.hpp"

using namespace cmsa;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    ok = ok && cond;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [x]");
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool in(double x, double lo, double hi) { return x >= lo && x <= hi; }

ExperimentReport ensemble(std::size_t n, double s, BudgetSpec budget, std::uint64_t seed, std::size_t trials = 100) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.s = s;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.budget = budget;
  cfg.parallelism = 1;
  return run_experiment(cfg);
}

std::size_t budget_violations(const ExperimentReport& rep) {
  std::size_t bad = 0;
  for (const auto& r : rep.rows) bad += r.ok() && !(r.c_arb <= rep.c0);
  return bad;
}

Check case1() {
  Check c;
  const auto rep = ensemble(3000, 1.0, BudgetSpec::power(0.5), 1001);
  const double ratio = rep.ratio.value_or(NAN);
  const double rel_std = rep.w_arb.std / rep.w_arb.mean;
  c.expect(rep.feasibility_rate == 1.0 && budget_violations(rep) == 0, fmt("feasible %.2f", rep.feasibility_rate));
  c.expect(in(ratio, 0.90, 1.10), fmt("mean W_arb %.4f / %.4f = %.4f in [0.90, 1.10]", rep.w_arb.mean,
                                      rep.prediction->w_star.value_or(NAN), ratio));
  c.expect(rel_std <= 0.05, fmt("relative std %.4f <= 0.05", rel_std));
  for (const auto& w : rep.warnings) std::printf("    note: %s\n", w.c_str());
  return c;
}

Check case2() {
  Check c;
  const auto tight = ensemble(2000, 1.0, BudgetSpec::alpha_n(0.3), 2002);
  const double ratio = tight.ratio.value_or(NAN);
  c.expect(tight.prediction && tight.prediction->regime == Regime::case2_tight, "alpha 0.3 classified CASE2_TIGHT");
  c.expect(tight.feasibility_rate == 1.0 && budget_violations(tight) == 0, fmt("feasible %.2f", tight.feasibility_rate));
  c.expect(in(ratio, 0.93, 1.07), fmt("alpha 0.3: %.4f / %.4f = %.4f in [0.93, 1.07]", tight.w_arb.mean,
                                      tight.prediction->w_star.value_or(NAN), ratio));
  const auto slack = ensemble(2000, 1.0, BudgetSpec::alpha_n(0.6), 2003);
  c.expect(slack.feasibility_rate == 1.0 && budget_violations(slack) == 0, fmt("feasible %.2f", slack.feasibility_rate));
  c.expect(in(slack.w_arb.mean, 0.9, 1.15), fmt("alpha 0.6: mean W_arb %.4f in [0.90, 1.15]", slack.w_arb.mean));
  return c;
}

Check case3() {
  Check c;
  const auto tight = ensemble(2000, 1.0, BudgetSpec::alpha_constant(2.0), 3003);
  const double ratio = tight.ratio.value_or(NAN);
  c.expect(tight.feasibility_rate == 1.0 && budget_violations(tight) == 0, fmt("feasible %.2f", tight.feasibility_rate));
  c.expect(in(ratio, 0.93, 1.07), fmt("alpha 2.0: %.3f / %.3f = %.4f in [0.93, 1.07]", tight.w_arb.mean,
                                      tight.prediction->w_star.value_or(NAN), ratio));
  const auto low = ensemble(2000, 1.0, BudgetSpec::alpha_constant(0.8), 3004);
  std::size_t infeasible = 0;
  for (const auto& r : low.rows) infeasible += r.status == "INFEASIBLE-LIKELY";
  c.expect(infeasible == low.rows.size(), fmt("alpha 0.8: %zu/%zu trials infeasible", infeasible, low.rows.size()));
  return c;
}

Check power_law() {
  Check c;
  const auto rep = ensemble(2000, 0.5, BudgetSpec::power(0.75), 4004);
  const double ratio = rep.ratio.value_or(NAN);
  c.expect(rep.feasibility_rate == 1.0 && budget_violations(rep) == 0, fmt("feasible %.2f", rep.feasibility_rate));
  c.expect(in(ratio, 0.85, 1.15), fmt("%.3f / %.3f = %.4f in [0.85, 1.15]", rep.w_arb.mean,
                                      rep.prediction->w_star.value_or(NAN), ratio));
  return c;
}

Check expectations() {
  Check c;
  struct Case {
    std::size_t n;
    double lambda, s;
    std::size_t reps;
    double tol;
    const char* label;
  };
  const double n3 = 1000.0;
  const std::vector<Case> cases = {
      {100000, 0.01, 1.0, 10000, 0.03, "E3 n=1e5 lambda=0.01"},
      {1000, 1.0 / n3, 1.0, 100000, 0.05, "E2 n=1e3 lambda=1/n"},
      {1000, n3 * std::log(n3) * std::log(n3), 1.0, 100000, 0.03, "E5 n=1e3 lambda=n log^2 n"},
      {10000, 1.0, 0.5, 20000, 0.05, "power law n=1e4 lambda=1 s=0.5"},
  };
  std::uint64_t seed = 5005;
  for (const auto& k : cases) {
    const auto r = run_expectation_check(k.n, k.lambda, k.s, k.reps, seed++);
    c.expect(r.relative_deviation <= k.tol,
             fmt("%s [%s]: dev %.4f <= %.2f", k.label, std::string(to_string(r.regime)).c_str(), r.relative_deviation, k.tol));
  }
  return c;
}

Check oracle_suite() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_oracle_suite(500, 4, 6, 6006);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(rep.passed(), fmt("%zu violations over %zu instances (%zu unsolved)", rep.violations.size(), rep.instances,
                             rep.unsolved));
  for (const auto& v : rep.violations) {
    std::printf("    violation %s seed=%llu n=%zu: %s\n", v.check.c_str(), static_cast<unsigned long long>(v.seed), v.n,
                v.detail.c_str());
  }
  c.expect(secs <= 60.0, fmt("runtime %.1f s <= 60 s", secs));
  return c;
}

Check mapping_structure() {
  Check c;
  const std::size_t n = 10000;
  std::size_t max_cycles = 0;
  double sum = 0.0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::size_t k = decompose(random_mapping(n, rng::trial_seed(7007, t))).cycle_count();
    max_cycles = std::max(max_cycles, k);
    sum += static_cast<double>(k);
  }
  const double ln = std::log(static_cast<double>(n));
  const double mean = sum / 1000.0;
  c.expect(max_cycles <= 40, fmt("max cycles %zu <= 40", max_cycles));
  c.expect(in(mean, 0.4 * ln, 0.7 * ln), fmt("mean %.3f in [%.3f, %.3f]", mean, 0.4 * ln, 0.7 * ln));

  const std::size_t m = 500;
  const double c0 = std::sqrt(static_cast<double>(m));
  double opt_sum = 0.0;
  for (std::size_t t = 0; t < 500; ++t) {
    const Instance inst = generate(m, 1.0, rng::trial_seed(7008, t));
    opt_sum += static_cast<double>(decompose(solve_mapping(inst, c0).mapping).cycle_count());
  }
  double uni_sum = 0.0;
  for (std::size_t t = 0; t < 5000; ++t) uni_sum += static_cast<double>(decompose(random_mapping(m, rng::trial_seed(7009, t))).cycle_count());
  const double opt_mean = opt_sum / 500.0, uni_mean = uni_sum / 5000.0;
  c.expect(std::abs(opt_mean / uni_mean - 1.0) <= 0.25,
           fmt("optimal-mapping mean cycles %.3f vs uniform %.3f (within 25%%)", opt_mean, uni_mean));
  return c;
}

Check special_functions() {
  Check c;
  const double pi = std::numbers::pi;
  c.expect(std::abs(gamma_fn(1.5) - std::sqrt(pi) / 2.0) <= 1e-10, "Gamma(3/2) = sqrt(pi)/2");
  c.expect(std::abs(c_s(1.0) - std::sqrt(pi / 2.0)) <= 1e-9, "C_1 = sqrt(pi/2)");
  c.expect(std::abs(f_eval(0.0) - 1.0) <= 1e-15 && std::abs(f_prime(0.0) - 0.5) <= 1e-15, "f(0) = 1, f'(0) = 1/2");
  c.expect(in(g_prime(1e6), 1.0, 1.01), fmt("g'(1e6) = %.8f in [1, 1.01]", g_prime(1e6)));
  double worst = 0.0;
  const double h = 1e-5;
  for (double b : {0.1, 1.0, 5.0, 50.0}) {
    worst = std::max(worst, std::abs(f_prime(b) - (f_eval(b + h) - f_eval(b - h)) / (2 * h)));
    worst = std::max(worst, std::abs(g_prime(b) - (g_eval(b + h) - g_eval(b - h)) / (2 * h)));
  }
  c.expect(worst <= 1e-6, fmt("derivatives vs central differences %.2e <= 1e-6", worst));
  double resid = 0.0;
  for (int k = 1; k <= 9; ++k) resid = std::max(resid, std::abs(f_prime(beta_star(0.05 * k, DualCase::case2)) - 0.05 * k));
  for (double a : {1.05, 1.5, 2.0, 10.0}) resid = std::max(resid, std::abs(g_prime(beta_star(a, DualCase::case3)) - a));
  c.expect(resid <= 1e-10, fmt("beta* residual %.2e <= 1e-10", resid));
  const double a2 = 1e-4, b2 = beta_star(a2, DualCase::case2);
  const double a3 = 1e3, b3 = beta_star(a3, DualCase::case3);
  const double r2 = (f_eval(b2) - a2 * b2) / (pi / (8 * a2));
  const double r3 = (g_eval(b3) - a3 * b3) / (pi / (8 * a3));
  c.expect(std::abs(r2 - 1.0) <= 0.02 && std::abs(r3 - 1.0) <= 0.02,
           fmt("limit consistency %.4f, %.4f within 2%%", r2, r3));
  return c;
}

Check determinism() {
  Check c;
  auto run = [](unsigned threads) {
    ExperimentConfig cfg;
    cfg.n = 300;
    cfg.trials = 16;
    cfg.base_seed = 9009;
    cfg.budget = BudgetSpec::power(0.5);
    cfg.parallelism = threads;
    const auto rep = run_experiment(cfg);
    std::ostringstream csv;
    write_trial_csv(rep, csv);
    return to_json(rep).dump() + "\n" + csv.str();
  };
  c.expect(run(1) == run(8), "report at parallelism 1 == parallelism 8");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"Case 1 reproduction", case1},         {"Case 2 reproduction", case2},
      {"Case 3 reproduction", case3},         {"Power-law s=0.5 reproduction", power_law},
      {"Expectation formulas", expectations}, {"Oracle suite", oracle_suite},
      {"Random-mapping structure", mapping_structure}, {"Special functions", special_functions},
      {"Determinism", determinism},
  };
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[k].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d %s (%.1fs): %s\n", c.ok ? "PASS" : "FAIL", id, criteria[k].first, secs,
                c.detail.c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
