#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cmsa/arborescence.hpp"
#include "cmsa/error.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/mapping.hpp"

namespace cmsa {

inline constexpr std::size_t kOracleMaxN = 7;

namespace detail {

inline void check_oracle_size(const Instance& inst) {
  if (inst.n() > kOracleMaxN) {
    throw Error(Errc::size_limit, "exact oracles enumerate; n must be <= " + std::to_string(kOracleMaxN));
  }
}

// Advances digits in [0, base) with the first digit most significant.
inline bool next_odometer(std::vector<int>& digits, int base) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < base) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace detail

/// Cheapest-weight mapping with cost <= c0 by full enumeration of the
/// (n-1)^n fixed-point-free functions. Ties go to the lexicographically
/// smallest f. Throws INFEASIBLE when no mapping fits.
inline Mapping exact_mapping_oracle(const Instance& inst, double c0) {
  detail::check_oracle_size(inst);
  const int n = static_cast<int>(inst.n());
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> f(static_cast<std::size_t>(n));
  std::vector<Vertex> best_f;
  double best_w = std::numeric_limits<double>::infinity();
  do {
    double w = 0.0, c = 0.0;
    for (int i = 0; i < n; ++i) {
      const int d = digits[static_cast<std::size_t>(i)];
      const Vertex j = d < i ? d : d + 1;
      f[static_cast<std::size_t>(i)] = j;
      w += inst.weight(i, j);
      c += inst.cost(i, j);
    }
    if (c <= c0 && w < best_w) {
      best_w = w;
      best_f = f;
    }
  } while (detail::next_odometer(digits, n - 1));
  if (best_f.empty()) throw Error(Errc::infeasible, "no mapping has cost <= c0");
  return make_mapping(inst, std::move(best_f));
}

/// Cheapest-weight spanning arborescence (any root) with cost <= c0 by full
/// enumeration. Pass c0 = +inf for the unconstrained optimum. Ties go to the
/// lexicographically smallest parent array (kNoParent sorts first).
inline Arborescence exact_arborescence_oracle(const Instance& inst,
                                              double c0 = std::numeric_limits<double>::infinity()) {
  detail::check_oracle_size(inst);
  const int n = static_cast<int>(inst.n());
  std::vector<Vertex> best_parent;
  Vertex best_root = -1;
  double best_w = std::numeric_limits<double>::infinity();
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<int> digits(static_cast<std::size_t>(n - 1), 0);
  for (Vertex root = 0; root < n; ++root) {
    std::fill(digits.begin(), digits.end(), 0);
    do {
      double w = 0.0, c = 0.0;
      for (int v = 0, k = 0; v < n; ++v) {
        if (v == root) {
          parent[static_cast<std::size_t>(v)] = kNoParent;
          continue;
        }
        const int d = digits[static_cast<std::size_t>(k++)];
        const Vertex p = d < v ? d : d + 1;
        parent[static_cast<std::size_t>(v)] = p;
        w += inst.weight(v, p);
        c += inst.cost(v, p);
      }
      if (c > c0 || w > best_w) continue;
      if (w == best_w && !(parent < best_parent)) continue;
      // Acyclic iff every vertex reaches the root within n steps.
      bool tree = true;
      for (int v = 0; v < n && tree; ++v) {
        Vertex u = v;
        int steps = 0;
        while (u != root && steps++ < n) u = parent[static_cast<std::size_t>(u)];
        tree = u == root;
      }
      if (!tree) continue;
      best_w = w;
      best_parent = parent;
      best_root = root;
    } while (detail::next_odometer(digits, n - 1));
  }
  if (best_parent.empty()) throw Error(Errc::infeasible, "no spanning arborescence has cost <= c0");
  return make_arborescence(inst, best_root, std::move(best_parent));
}

}  // namespace cmsa
