#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cmsa/asymptotics.hpp"
#include "cmsa/dual.hpp"
#include "cmsa/edmonds.hpp"
#include "cmsa/error.hpp"
#include "cmsa/functional_digraph.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/oracles.hpp"
#include "cmsa/pipeline.hpp"
#include "cmsa/rng.hpp"

namespace cmsa {

enum class BudgetKind { absolute, alpha_n, alpha_constant, power };

struct BudgetSpec {
  BudgetKind kind = BudgetKind::absolute;
  double value = 1.0;

  static BudgetSpec absolute(double c0) { return {BudgetKind::absolute, c0}; }
  static BudgetSpec alpha_n(double alpha) { return {BudgetKind::alpha_n, alpha}; }
  static BudgetSpec alpha_constant(double alpha) { return {BudgetKind::alpha_constant, alpha}; }
  static BudgetSpec power(double gamma) { return {BudgetKind::power, gamma}; }

  double resolve(std::size_t n) const {
    const double nn = static_cast<double>(n);
    switch (kind) {
      case BudgetKind::absolute:
      case BudgetKind::alpha_constant: return value;
      case BudgetKind::alpha_n: return value * nn;
      case BudgetKind::power: return std::pow(nn, value);
    }
    return value;
  }
};

constexpr std::string_view to_string(BudgetKind k) {
  switch (k) {
    case BudgetKind::absolute: return "absolute";
    case BudgetKind::alpha_n: return "alpha_n";
    case BudgetKind::alpha_constant: return "alpha_constant";
    case BudgetKind::power: return "power";
  }
  return "?";
}

struct ExperimentConfig {
  std::size_t n = 100;
  double s = 1.0;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  BudgetSpec budget;
  double lambda_tol = kDefaultLambdaTol;
  std::optional<double> tighten;
  unsigned parallelism = 1;  // 0: hardware concurrency
};

struct TrialRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string status = "OK";  // or an error tag
  double lambda_star = 0.0;
  double phi_star = 0.0;
  double lower_bound = 0.0;
  double w_map = 0.0;
  double c_map = 0.0;
  double w_arb = 0.0;
  double c_arb = 0.0;
  int cycles = 0;
  int edges_added = 0;
  double w_max_used = 0.0;
  double c_max_used = 0.0;

  bool ok() const noexcept { return status == "OK"; }
};

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  double min = 0.0;
  double max = 0.0;
};

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

struct ExperimentReport {
  ExperimentConfig config;
  double c0 = 0.0;
  std::vector<TrialRow> rows;
  Summary w_arb;
  Summary w_map;
  double feasibility_rate = 0.0;
  std::optional<Prediction> prediction;
  std::string prediction_error;
  std::optional<double> ratio;  // mean(W_arb) / w_star
  std::vector<std::string> warnings;
};

inline TrialRow run_trial(const ExperimentConfig& cfg, double c0, std::size_t index) {
  TrialRow row;
  row.index = index;
  row.seed = rng::trial_seed(cfg.base_seed, index);
  try {
    const Instance inst = generate(cfg.n, cfg.s, row.seed);
    PipelineOptions opt;
    opt.tighten = cfg.tighten;
    opt.lambda_tol = cfg.lambda_tol;
    const PipelineResult r = solve_constrained_arborescence(inst, c0, opt);
    row.lambda_star = r.trace.lambda_star;
    row.phi_star = r.trace.phi_star;
    row.lower_bound = r.lower_bound;
    row.w_map = r.trace.mapping_weight;
    row.c_map = r.trace.mapping_cost;
    row.w_arb = r.arborescence.weight;
    row.c_arb = r.arborescence.cost;
    row.cycles = r.trace.cycles_broken;
    row.edges_added = r.trace.edges_added;
    row.w_max_used = r.trace.w_max_used;
    row.c_max_used = r.trace.c_max_used;
    if (!(row.c_arb <= c0)) row.status = "BUDGET-VIOLATION";
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  return row;
}

/// Runs cfg.trials independent trials. Rows land in trial order, so the
/// report does not depend on the worker count.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                       const std::function<void(const TrialRow&)>& on_trial = {}) {
  require(cfg.trials >= 1, Errc::invalid_argument, "trials must be >= 1");
  require(cfg.n >= 2, Errc::invalid_argument, "n must be >= 2");
  require(cfg.s > 0.0 && cfg.s <= 1.0, Errc::invalid_argument, "s must lie in (0, 1]");
  require(cfg.lambda_tol > 0.0, Errc::invalid_argument, "lambda_tol must be > 0");
  ExperimentReport rep;
  rep.config = cfg;
  rep.c0 = cfg.budget.resolve(cfg.n);
  require(rep.c0 > 0.0 && std::isfinite(rep.c0), Errc::invalid_argument, "budget must resolve to c0 > 0");

  rep.rows.resize(cfg.trials);
  unsigned workers = cfg.parallelism == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.parallelism;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < cfg.trials;) rep.rows[t] = run_trial(cfg, rep.c0, t);
  };
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      rep.rows[t] = run_trial(cfg, rep.c0, t);
      if (on_trial) on_trial(rep.rows[t]);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (on_trial) {
      for (const auto& r : rep.rows) on_trial(r);
    }
  }

  std::vector<double> warb, wmap;
  for (const auto& r : rep.rows) {
    if (!r.ok()) continue;
    warb.push_back(r.w_arb);
    wmap.push_back(r.w_map);
  }
  rep.w_arb = summarize(warb);
  rep.w_map = summarize(wmap);
  rep.feasibility_rate = static_cast<double>(warb.size()) / static_cast<double>(cfg.trials);

  try {
    rep.prediction = predict(cfg.n, rep.c0, cfg.s);
    if (rep.prediction->w_star && !warb.empty()) rep.ratio = rep.w_arb.mean / *rep.prediction->w_star;
  } catch (const Error& e) {
    rep.prediction_error = std::string(to_string(e.code())) + ": " + e.what();
  }

  if (rep.prediction && rep.prediction->regime == Regime::case1) {
    const double nn = static_cast<double>(cfg.n);
    const double scale = std::sqrt(std::log(nn) / nn);
    for (const auto& r : rep.rows) {
      if (r.ok() && r.w_max_used > 20.0 * (1.0 + r.lambda_star) * scale) {
        rep.warnings.push_back("trial " + std::to_string(r.index) + ": w_max_used " + std::to_string(r.w_max_used) +
                               " above 20 (1 + lambda*) sqrt(log n / n)");
      }
    }
  }
  return rep;
}

namespace detail {
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

inline constexpr const char* kTrialCsvHeader =
    "trial,seed,status,lambda_star,phi_star,lower_bound,w_map,c_map,w_arb,c_arb,cycles,edges_added,w_max_used,"
    "c_max_used";

inline void write_trial_csv(const ExperimentReport& rep, std::ostream& out) {
  using detail::fmt_double;
  out << kTrialCsvHeader << '\n';
  for (const auto& r : rep.rows) {
    out << r.index << ',' << r.seed << ',' << r.status << ',' << fmt_double(r.lambda_star) << ','
        << fmt_double(r.phi_star) << ',' << fmt_double(r.lower_bound) << ',' << fmt_double(r.w_map) << ','
        << fmt_double(r.c_map) << ',' << fmt_double(r.w_arb) << ',' << fmt_double(r.c_arb) << ',' << r.cycles << ','
        << r.edges_added << ',' << fmt_double(r.w_max_used) << ',' << fmt_double(r.c_max_used) << '\n';
  }
}

// ---------------------------------------------------------------------------

struct ExpectationReport {
  std::size_t n = 0;
  double lambda = 0.0;
  double s = 1.0;
  std::size_t repetitions = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;
  MinRegime regime = MinRegime::e1;
  double relative_deviation = 0.0;
};

/// Monte Carlo mean of min_{i <= n} (X_i + lambda Y_i) with X, Y i.i.d. U^s,
/// against expected_min(n, lambda, s).
inline ExpectationReport run_expectation_check(std::size_t n, double lambda, double s, std::size_t repetitions,
                                               std::uint64_t seed) {
  require(repetitions >= 1, Errc::invalid_argument, "repetitions must be >= 1");
  ExpectationReport rep;
  rep.n = n;
  rep.lambda = lambda;
  rep.s = s;
  rep.repetitions = repetitions;
  const ExpectedMin em = expected_min(n, lambda, s);
  rep.expected = em.value;
  rep.regime = em.regime;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t r = 0; r < repetitions; ++r) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = power_transform(rng::uniform(seed, r, i, rng::Stream::weight), s);
      const double y = power_transform(rng::uniform(seed, r, i, rng::Stream::cost), s);
      best = std::min(best, x + lambda * y);
    }
    sum += best;
    sum2 += best * best;
  }
  const double reps = static_cast<double>(repetitions);
  rep.mean = sum / reps;
  const double var = repetitions > 1 ? std::max(0.0, (sum2 - reps * rep.mean * rep.mean) / (reps - 1.0)) : 0.0;
  rep.standard_error = std::sqrt(var / reps);
  rep.relative_deviation = std::abs(rep.mean - rep.expected) / rep.expected;
  return rep;
}

// ---------------------------------------------------------------------------

struct OracleViolation {
  std::uint64_t seed;
  std::size_t n;
  double c0;
  std::string check;  // "edmonds", "weak_duality", "sandwich", "repair"
  std::string detail;
};

struct OracleSuiteReport {
  std::size_t instances = 0;
  std::size_t unsolved = 0;  // pipeline signalled INFEASIBLE-LIKELY or REPAIR-BUDGET-EXCEEDED
  std::vector<OracleViolation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

struct OracleCase {
  std::uint64_t seed;
  std::size_t n;
};

/// Instance k of an oracle suite; replay a violation with run_oracle_case.
inline OracleCase oracle_case(std::uint64_t seed, std::size_t k, std::size_t n_min, std::size_t n_max) {
  const std::uint64_t s = rng::trial_seed(seed, k);
  const std::size_t span = n_max - n_min + 1;
  return {s, n_min + static_cast<std::size_t>(rng::hash(s, 0, 0, rng::Stream::trial) % span)};
}

/// Budget for an oracle instance: between the cheapest possible mapping cost
/// and 1.25 times the cost of the unconstrained row-minimum mapping.
inline double oracle_budget(const Instance& inst) {
  const double lo = min_possible_cost(inst);
  const double hi = 1.25 * phi(inst, 0.0, 0.0).argmin.cost;
  const double u = rng::uniform(inst.seed(), 1, 1, rng::Stream::trial);
  return std::max(lo, lo + u * (hi - lo));
}

/// Checks one instance. `mutate` corrupts the Edmonds comparison so the
/// suite can prove it reports failures.
inline void run_oracle_case(const OracleCase& oc, OracleSuiteReport& rep, bool mutate = false) {
  constexpr double eps = 1e-9;
  const Instance inst = generate(oc.n, 1.0, oc.seed);
  const double c0 = oracle_budget(inst);
  ++rep.instances;
  auto fail = [&](const char* check, std::string detail) {
    rep.violations.push_back({oc.seed, oc.n, c0, check, std::move(detail)});
  };

  const double w_ed = edmonds(inst).weight + (mutate ? 1e-6 : 0.0);
  const double w_ex = exact_arborescence_oracle(inst).weight;
  if (std::abs(w_ed - w_ex) > eps) {
    fail("edmonds", "edmonds " + detail::fmt_double(w_ed) + " vs exhaustive " + detail::fmt_double(w_ex));
  }

  const MappingSolution sol = solve_mapping(inst, c0);
  const double w_map_opt = exact_mapping_oracle(inst, c0).weight;
  if (sol.phi_star > w_map_opt + eps) {
    fail("weak_duality", "phi* " + detail::fmt_double(sol.phi_star) + " > mapping optimum " +
                             detail::fmt_double(w_map_opt));
  }
  if (sol.mapping.weight > sol.phi_star + sol.w_max_used + eps || sol.mapping.cost > c0) {
    fail("sandwich", "W(f) " + detail::fmt_double(sol.mapping.weight) + " vs phi* + W_max " +
                         detail::fmt_double(sol.phi_star + sol.w_max_used));
  }

  try {
    const PipelineResult r = solve_constrained_arborescence(inst, c0);
    const Validation v = validate(r.arborescence, inst);
    if (!v) fail("repair", v.diagnostics.front());
    if (!(r.arborescence.cost <= c0)) fail("repair", "cost " + detail::fmt_double(r.arborescence.cost) + " > c0");
  } catch (const Error& e) {
    if (e.code() == Errc::infeasible_likely || e.code() == Errc::repair_budget_exceeded) {
      ++rep.unsolved;
    } else {
      fail("repair", e.what());
    }
  }
}

inline OracleSuiteReport run_oracle_suite(std::size_t count, std::size_t n_min, std::size_t n_max,
                                          std::uint64_t seed, bool mutate = false) {
  require(n_min >= 2 && n_min <= n_max && n_max <= kOracleMaxN, Errc::invalid_argument,
          "oracle suite needs 2 <= n_min <= n_max <= 7");
  OracleSuiteReport rep;
  for (std::size_t k = 0; k < count; ++k) run_oracle_case(oracle_case(seed, k, n_min, n_max), rep, mutate);
  return rep;
}

}  // namespace cmsa
