#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "cmsa/arborescence.hpp"
#include "cmsa/dual.hpp"
#include "cmsa/edmonds.hpp"
#include "cmsa/error.hpp"
#include "cmsa/functional_digraph.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/repair.hpp"

namespace cmsa {

struct PipelineOptions {
  std::optional<double> tighten;  // unset: default_tighten
  double lambda_tol = kDefaultLambdaTol;
  int max_attempts = 6;           // tighten doubles after each failed repair
  bool lagrangian_polish = true;  // also try Edmonds on W + lambda* C
  std::size_t polish_max_n = 256;
};

struct PipelineTrace {
  double lambda_star = 0.0;
  double phi_star = 0.0;
  double tighten = 0.0;
  int attempts = 0;
  int cycles_broken = 0;
  int edges_added = 0;
  double slack = 0.0;  // c0 - final cost
  bool polished = false;
  double mapping_weight = 0.0;
  double mapping_cost = 0.0;
  double w_max_used = 0.0;
  double c_max_used = 0.0;
};

struct PipelineResult {
  Arborescence arborescence;
  double lower_bound = 0.0;  // dual bound on the mapping optimum at c0
  PipelineTrace trace;
};

/// Budget reserve for the repair step. Constant budgets (c0 < log n) leave
/// edges of cost order 1/n..1/sqrt(n) room; larger budgets scale with
/// c0 n^{-1/4} log n, capped at one unit. Never more than a quarter of c0.
inline double default_tighten(std::size_t n, double c0) {
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  const double t = c0 < ln ? 1.0 / std::sqrt(nn) : std::min(1.0, c0 * std::pow(nn, -0.25) * ln);
  return std::min(t, 0.25 * c0);
}

/// solve_mapping -> repair -> validate, retrying with a larger tighten when
/// the repair overshoots c0.
inline PipelineResult solve_constrained_arborescence(const Instance& inst, double c0,
                                                     const PipelineOptions& opt = {}) {
  require(c0 > 0.0 && !std::isnan(c0), Errc::invalid_argument, "c0 must be > 0");
  require(opt.max_attempts >= 1, Errc::invalid_argument, "max_attempts must be >= 1");
  const double floor_cost = min_possible_cost(inst);
  if (floor_cost > c0) {
    throw Error(Errc::infeasible_likely, "c0 is below the sum of per-row cost minima");
  }
  const std::size_t n = inst.n();
  double tighten = std::isfinite(c0) ? opt.tighten.value_or(default_tighten(n, c0)) : 0.0;
  require(tighten >= 0.0, Errc::invalid_argument, "tighten must be >= 0");
  if (std::isfinite(c0) && c0 - tighten < floor_cost) tighten = 0.5 * (c0 - floor_cost);
  // An infinite budget is a plain min-weight problem; any finite stand-in above every mapping cost works.
  const double dual_c0 = std::isfinite(c0) ? c0 : static_cast<double>(n) + 1.0;

  PipelineResult out;
  for (int attempt = 1;; ++attempt) {
    const MappingSolution sol = solve_mapping(inst, dual_c0, tighten, opt.lambda_tol);
    RepairStats stats;
    try {
      out.arborescence = repair(sol.mapping, inst, c0, sol.lambda_star, &stats);
    } catch (const Error& e) {
      const double next = std::max(2.0 * tighten, 1.0 / std::sqrt(static_cast<double>(n)));
      if (e.code() != Errc::repair_budget_exceeded || attempt >= opt.max_attempts ||
          c0 - next < floor_cost) {
        throw;
      }
      tighten = next;
      continue;
    }
    out.lower_bound = sol.lower_bound;
    out.trace.lambda_star = sol.lambda_star;
    out.trace.phi_star = sol.phi_star;
    out.trace.tighten = tighten;
    out.trace.attempts = attempt;
    out.trace.cycles_broken = stats.cycles_broken;
    out.trace.edges_added = stats.edges_added;
    out.trace.mapping_weight = sol.mapping.weight;
    out.trace.mapping_cost = sol.mapping.cost;
    out.trace.w_max_used = sol.w_max_used;
    out.trace.c_max_used = sol.c_max_used;
    if (opt.lagrangian_polish && n <= opt.polish_max_n) {
      const double lam = sol.lambda_star;
      Arborescence cand =
          edmonds(inst, [&](Vertex v, Vertex p) { return inst.weight(v, p) + lam * inst.cost(v, p); });
      if (cand.cost <= c0 && cand.weight < out.arborescence.weight) {
        out.arborescence = std::move(cand);
        out.trace.polished = true;
      }
    }
    break;
  }
  const Validation v = validate(out.arborescence, inst);
  if (!v) throw std::logic_error("pipeline produced an invalid arborescence: " + v.diagnostics.front());
  out.trace.slack = c0 - out.arborescence.cost;
  return out;
}

}  // namespace cmsa
