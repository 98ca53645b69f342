#pragma once

// JSON views of results. Requires nlohmann/json (single header "json.hpp").

#include <cmath>
#include <string>

#include <json.hpp>

#include "cmsa/arborescence.hpp"
#include "cmsa/asymptotics.hpp"
#include "cmsa/dual.hpp"
#include "cmsa/harness.hpp"
#include "cmsa/pipeline.hpp"

namespace cmsa {

using nlohmann::json;

namespace detail {
// Non-finite values have no JSON literal; emit null.
inline json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
template <class T>
json opt(const std::optional<T>& x) {
  return x ? num(*x) : json(nullptr);
}
}  // namespace detail

inline json to_json(const Arborescence& a) {
  return {{"root", a.root}, {"parent", a.parent}, {"weight", a.weight}, {"cost", a.cost}};
}

inline json to_json(const PipelineTrace& t) {
  return {{"lambda_star", t.lambda_star}, {"phi_star", t.phi_star},       {"tighten", t.tighten},
          {"attempts", t.attempts},       {"cycles_broken", t.cycles_broken}, {"edges_added", t.edges_added},
          {"slack", t.slack},             {"polished", t.polished},       {"mapping_weight", t.mapping_weight},
          {"mapping_cost", t.mapping_cost}, {"w_max_used", t.w_max_used}, {"c_max_used", t.c_max_used}};
}

inline json to_json(const PipelineResult& r) {
  json j = to_json(r.arborescence);
  j["lower_bound"] = r.lower_bound;
  j["trace"] = to_json(r.trace);
  return j;
}

inline json to_json(const Prediction& p) {
  return {{"regime", std::string(to_string(p.regime))},
          {"w_star", detail::opt(p.w_star)},
          {"lambda_star_hint", detail::opt(p.lambda_star_hint)},
          {"beta_star", detail::opt(p.beta_star)},
          {"alpha", p.alpha},
          {"guard_low", detail::num(p.guard_low)},
          {"guard_high", detail::num(p.guard_high)}};
}

inline json to_json(const DualOptimum& d) {
  return {{"lambda_star", d.lambda_star},       {"phi_star", d.phi_star},
          {"lambda_low", d.lambda_low},         {"lambda_high", d.lambda_high},
          {"mapping_low_cost", d.mapping_low.cost}, {"mapping_high_cost", d.mapping_high.cost},
          {"mapping_high_weight", d.mapping_high.weight}, {"evaluations", d.evaluations}};
}

inline json to_json(const Summary& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}};
}

inline json to_json(const TrialRow& r) {
  return {{"trial", r.index},         {"seed", r.seed},           {"status", r.status},
          {"lambda_star", r.lambda_star}, {"phi_star", r.phi_star}, {"lower_bound", r.lower_bound},
          {"w_map", r.w_map},         {"c_map", r.c_map},         {"w_arb", r.w_arb},
          {"c_arb", r.c_arb},         {"cycles", r.cycles},       {"edges_added", r.edges_added},
          {"w_max_used", r.w_max_used}, {"c_max_used", r.c_max_used}};
}

inline json to_json(const ExperimentReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back(to_json(r));
  json cfg = {{"n", rep.config.n},
              {"s", rep.config.s},
              {"trials", rep.config.trials},
              {"base_seed", rep.config.base_seed},
              {"budget", {{"kind", std::string(to_string(rep.config.budget.kind))}, {"value", rep.config.budget.value}}},
              {"lambda_tol", rep.config.lambda_tol},
              {"tighten", detail::opt(rep.config.tighten)}};
  return {{"schema", 1},
          {"config", cfg},
          {"c0", rep.c0},
          {"aggregates",
           {{"w_arb", to_json(rep.w_arb)}, {"w_map", to_json(rep.w_map)}, {"feasibility_rate", rep.feasibility_rate}}},
          {"prediction", rep.prediction ? to_json(*rep.prediction) : json(nullptr)},
          {"prediction_error", rep.prediction_error},
          {"ratio", detail::opt(rep.ratio)},
          {"warnings", rep.warnings},
          {"trials", rows}};
}

inline json to_json(const ExpectationReport& r) {
  return {{"n", r.n},
          {"lambda", r.lambda},
          {"s", r.s},
          {"repetitions", r.repetitions},
          {"mean", r.mean},
          {"standard_error", r.standard_error},
          {"expected", r.expected},
          {"regime", std::string(to_string(r.regime))},
          {"relative_deviation", r.relative_deviation}};
}

inline json to_json(const OracleSuiteReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) {
    v.push_back({{"seed", x.seed}, {"n", x.n}, {"c0", x.c0}, {"check", x.check}, {"detail", x.detail}});
  }
  return {{"instances", r.instances}, {"unsolved", r.unsolved}, {"passed", r.passed()}, {"violations", v}};
}

}  // namespace cmsa
