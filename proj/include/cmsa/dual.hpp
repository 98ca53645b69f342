#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cmsa/error.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/mapping.hpp"
#include "cmsa/rng.hpp"

namespace cmsa {

inline constexpr double kDefaultLambdaTol = 1e-10;

/// One evaluation of the Lagrangian dual of the constrained mapping problem:
///   phi(lambda, c0) = sum_i min_{j != i} (W_ij + lambda C_ij) - lambda c0.
struct DualEvaluation {
  double lambda = 0.0;
  double phi = 0.0;
  Mapping argmin;
  double subgradient = 0.0;  // C(argmin) - c0
};

/// Single O(n^2) scan; ties go to the smallest column index.
inline DualEvaluation phi(const Instance& inst, double lambda, double c0) {
  require(lambda >= 0.0 && std::isfinite(lambda), Errc::invalid_argument, "phi needs finite lambda >= 0");
  const std::size_t n = inst.n();
  DualEvaluation ev;
  ev.lambda = lambda;
  ev.argmin.f.resize(n);
  double w_sum = 0.0;
  double c_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* w = inst.weight_row(static_cast<Vertex>(i)).data();
    const double* c = inst.cost_row(static_cast<Vertex>(i)).data();
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = i == 0 ? 1 : 0;
    // The diagonal is skipped explicitly: 0 * inf would poison the scan.
    for (std::size_t j = 0; j < i; ++j) {
      const double v = w[j] + lambda * c[j];
      if (v < best) {
        best = v;
        arg = j;
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = w[j] + lambda * c[j];
      if (v < best) {
        best = v;
        arg = j;
      }
    }
    ev.argmin.f[i] = static_cast<Vertex>(arg);
    w_sum += w[arg];
    c_sum += c[arg];
  }
  ev.argmin.weight = w_sum;
  ev.argmin.cost = c_sum;
  ev.phi = w_sum + lambda * c_sum - lambda * c0;
  ev.subgradient = c_sum - c0;
  return ev;
}

/// Sum over rows of the cheapest available cost; no mapping costs less.
inline double min_possible_cost(const Instance& inst) {
  double total = 0.0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto row = inst.cost_row(static_cast<Vertex>(i));
    total += *std::min_element(row.begin(), row.end());
  }
  return total;
}

struct DualOptimum {
  double lambda_star = 0.0;
  double phi_star = 0.0;
  Mapping mapping_low;   // argmin just below lambda_star, cost >= c0 side
  Mapping mapping_high;  // argmin just above lambda_star, cost <= c0 side
  double lambda_low = 0.0;
  double lambda_high = 0.0;
  int evaluations = 0;
};

/// Maximizes the concave piecewise-linear phi(., c0) over lambda >= 0.
///
/// The bracket [lo, hi] always satisfies C(f_lo) > c0 >= C(f_hi). Each step
/// probes the intersection of the two bracket lines (falling back to the
/// midpoint when one side has been replaced three times in a row), and the
/// search stops once hi - lo <= lambda_tol * (1 + lo). The initial upper end
/// is n log n, doubled until the subgradient turns non-positive.
///
/// Throws INFEASIBLE-LIKELY when even the per-row cheapest mapping exceeds c0.
inline DualOptimum maximize_dual(const Instance& inst, double c0, double lambda_tol = kDefaultLambdaTol) {
  require(c0 > 0.0 && std::isfinite(c0), Errc::invalid_argument, "maximize_dual needs c0 > 0");
  require(lambda_tol > 0.0, Errc::invalid_argument, "maximize_dual needs lambda_tol > 0");
  if (min_possible_cost(inst) > c0) {
    throw Error(Errc::infeasible_likely, "per-row cheapest edges already cost more than c0");
  }

  DualOptimum out;
  double best_phi = -std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  auto probe = [&](double lambda) {
    DualEvaluation ev = phi(inst, lambda, c0);
    ++out.evaluations;
    if (ev.phi >= best_phi) {
      best_phi = ev.phi;
      best_lambda = lambda;
    }
    return ev;
  };

  DualEvaluation lo = probe(0.0);
  if (lo.subgradient <= 0.0) {
    out.lambda_star = 0.0;
    out.phi_star = lo.phi;
    out.mapping_low = lo.argmin;
    out.mapping_high = std::move(lo.argmin);
    return out;
  }

  const double nn = static_cast<double>(inst.n());
  DualEvaluation hi = probe(nn * std::log(nn));
  for (int grow = 0; hi.subgradient > 0.0; ++grow) {
    if (grow > 2000 || !std::isfinite(hi.lambda * 2.0)) {
      throw Error(Errc::infeasible_likely, "no lambda brings the argmin cost under c0");
    }
    lo = std::move(hi);
    hi = probe(lo.lambda * 2.0);
  }

  auto crossing = [&](const DualEvaluation& a, const DualEvaluation& b) {
    // a.subgradient > 0 >= b.subgradient, so the slopes differ.
    return (b.argmin.weight - a.argmin.weight) / (a.argmin.cost - b.argmin.cost);
  };

  int streak = 0;
  bool last_low = false;
  while (hi.lambda - lo.lambda > lambda_tol * (1.0 + lo.lambda)) {
    double x = crossing(lo, hi);
    if (streak >= 3 || !(x > lo.lambda && x < hi.lambda)) {
      x = 0.5 * (lo.lambda + hi.lambda);
      streak = 0;
    }
    const double margin = 0.25 * lambda_tol * (1.0 + lo.lambda);
    x = std::clamp(x, lo.lambda + margin, hi.lambda - margin);
    DualEvaluation ev = probe(x);
    const bool now_low = ev.subgradient > 0.0;
    streak = (now_low == last_low) ? streak + 1 : 1;
    last_low = now_low;
    if (now_low) {
      lo = std::move(ev);
    } else {
      hi = std::move(ev);
    }
  }

  const double x = std::clamp(crossing(lo, hi), lo.lambda, hi.lambda);
  probe(x);
  out.lambda_star = best_lambda;
  out.phi_star = best_phi;
  out.lambda_low = lo.lambda;
  out.lambda_high = hi.lambda;
  out.mapping_low = std::move(lo.argmin);
  out.mapping_high = std::move(hi.argmin);
  return out;
}

/// Feasible mapping built from the dual bracket, with its certificate.
struct MappingSolution {
  Mapping mapping;             // cost <= c0
  double lower_bound = 0.0;    // phi(lambda_star, c0) for the original budget
  double phi_star = 0.0;       // dual maximum for the tightened budget
  double lambda_star = 0.0;
  double budget_used = 0.0;    // c0 - tighten
  double w_max_used = 0.0;
  double c_max_used = 0.0;
  DualOptimum dual;
};

/// Runs the dual with budget c0 - tighten, then returns the lightest mapping
/// with cost <= c0 among the high-side bracket mapping and the low-side
/// mapping (itself or with one row moved to another edge).
inline MappingSolution solve_mapping(const Instance& inst, double c0, double tighten = 0.0,
                                     double lambda_tol = kDefaultLambdaTol) {
  require(c0 > 0.0 && std::isfinite(c0), Errc::invalid_argument, "solve_mapping needs c0 > 0");
  require(tighten >= 0.0 && std::isfinite(tighten), Errc::invalid_argument,
          "solve_mapping needs tighten >= 0");
  const double budget = c0 - tighten;
  if (budget <= 0.0) throw Error(Errc::tighten_too_large, "c0 - tighten must stay positive");

  MappingSolution sol;
  sol.dual = maximize_dual(inst, budget, lambda_tol);
  sol.budget_used = budget;
  sol.lambda_star = sol.dual.lambda_star;
  sol.phi_star = sol.dual.phi_star;
  sol.lower_bound = sol.dual.phi_star - sol.dual.lambda_star * tighten;

  const Mapping& high = sol.dual.mapping_high;
  const Mapping& low = sol.dual.mapping_low;
  Mapping best = high;
  if (low.cost <= c0) {
    if (low.weight < best.weight) best = low;
  } else {
    const auto n = static_cast<Vertex>(inst.n());
    Vertex swap_row = -1;
    Vertex swap_col = -1;
    double swap_weight = best.weight;
    for (Vertex i = 0; i < n; ++i) {
      const Vertex cur = low.f[static_cast<std::size_t>(i)];
      const double base_w = low.weight - inst.weight(i, cur);
      const double base_c = low.cost - inst.cost(i, cur);
      for (Vertex j = 0; j < n; ++j) {
        if (j == i || j == cur) continue;
        const double w = base_w + inst.weight(i, j);
        if (w < swap_weight && base_c + inst.cost(i, j) <= c0) {
          swap_weight = w;
          swap_row = i;
          swap_col = j;
        }
      }
    }
    if (swap_row >= 0) {
      std::vector<Vertex> f = low.f;
      f[static_cast<std::size_t>(swap_row)] = swap_col;
      Mapping swapped = make_mapping(inst, std::move(f));
      if (swapped.cost <= c0 && swapped.weight < best.weight) best = std::move(swapped);
    }
  }
  sol.mapping = std::move(best);
  sol.w_max_used = max_edge_weight(inst, sol.mapping);
  sol.c_max_used = max_edge_cost(inst, sol.mapping);
  return sol;
}

struct ConcentrationStats {
  double mean = 0.0;
  double relative_std = 0.0;
  double max_relative_deviation = 0.0;
  std::vector<double> samples;
};

/// Samples S = sum_i min_j (W_ij + lambda C_ij) over `trials` fresh
/// instances. Trial t uses the edges of generate(n, s, trial_seed(seed, t))
/// without materializing the matrices.
inline ConcentrationStats empirical_concentration(std::size_t n, double s, double lambda,
                                                  std::size_t trials, std::uint64_t seed) {
  require(n >= 2 && trials >= 1, Errc::invalid_argument, "empirical_concentration needs n >= 2, trials >= 1");
  require(s > 0.0 && s <= 1.0, Errc::invalid_argument, "empirical_concentration needs s in (0, 1]");
  require(lambda >= 0.0 && std::isfinite(lambda), Errc::invalid_argument,
          "empirical_concentration needs lambda >= 0");
  ConcentrationStats st;
  st.samples.reserve(trials);
  const auto nv = static_cast<Vertex>(n);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = rng::trial_seed(seed, t);
    double total = 0.0;
    for (Vertex i = 0; i < nv; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Vertex j = 0; j < nv; ++j) {
        if (j == i) continue;
        best = std::min(best, edge_weight_draw(ts, i, j, s) + lambda * edge_cost_draw(ts, i, j, s));
      }
      total += best;
    }
    st.samples.push_back(total);
  }
  double sum = 0.0;
  for (double v : st.samples) sum += v;
  st.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : st.samples) {
    ss += (v - st.mean) * (v - st.mean);
    st.max_relative_deviation = std::max(st.max_relative_deviation, std::abs(v - st.mean) / st.mean);
  }
  st.relative_std = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) / st.mean : 0.0;
  return st;
}

}  // namespace cmsa
