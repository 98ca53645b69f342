#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cmsa/arborescence.hpp"
#include "cmsa/error.hpp"
#include "cmsa/functional_digraph.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/mapping.hpp"

namespace cmsa {

struct RepairStats {
  Vertex root = 0;
  int cycles_broken = 0;
  int edges_added = 0;
};

/// Turns a mapping into a spanning arborescence.
///
/// The cycle of the largest component loses the out-edge with the highest
/// W + lambda C score, and its tail becomes the root. Every other cycle, in
/// decreasing component size, swaps one cycle out-edge (v, f(v)) for an edge
/// (v, u) into the already rooted set, choosing the pair with the smallest
/// score change among those keeping the running cost <= c0 (the cheapest
/// pair if none does). Reconnecting only into the rooted set keeps the
/// result acyclic.
///
/// Throws REPAIR-BUDGET-EXCEEDED if the final cost is above c0.
inline Arborescence repair(const Mapping& m, const Instance& inst, double c0, double lambda_star,
                           RepairStats* stats = nullptr) {
  require(m.size() == inst.n(), Errc::shape, "repair: mapping length must equal n");
  require(lambda_star >= 0.0 && std::isfinite(lambda_star), Errc::invalid_argument,
          "repair: lambda_star must be finite and >= 0");
  const std::size_t n = inst.n();
  const auto d = decompose(m);
  auto score = [&](Vertex v, Vertex u) { return inst.weight(v, u) + lambda_star * inst.cost(v, u); };

  std::vector<Vertex> parent = m.f;
  double cost = m.cost;

  const auto root_comp = static_cast<std::size_t>(d.largest_component);
  Vertex root = -1;
  double root_score = -std::numeric_limits<double>::infinity();
  for (Vertex v : d.cycles[root_comp]) {
    const double sc = score(v, m.f[static_cast<std::size_t>(v)]);
    if (sc > root_score || (sc == root_score && v < root)) {
      root_score = sc;
      root = v;
    }
  }
  cost -= inst.cost(root, parent[static_cast<std::size_t>(root)]);
  parent[static_cast<std::size_t>(root)] = kNoParent;

  std::vector<std::uint8_t> rooted(n, 0);
  for (std::size_t v = 0; v < n; ++v) rooted[v] = d.component_of[v] == d.largest_component;

  std::vector<std::size_t> order(d.cycles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return d.component_sizes[a] > d.component_sizes[b];
  });

  int added = 0;
  for (std::size_t comp : order) {
    if (comp == root_comp) continue;
    std::vector<Vertex> cyc = d.cycles[comp];
    std::sort(cyc.begin(), cyc.end());
    Vertex best_v = -1, best_u = -1;
    double best_delta = std::numeric_limits<double>::infinity();
    Vertex cheap_v = -1, cheap_u = -1;
    double cheap_cost = std::numeric_limits<double>::infinity();
    for (Vertex v : cyc) {
      const Vertex old = m.f[static_cast<std::size_t>(v)];
      const double base_cost = cost - inst.cost(v, old);
      const double base_score = score(v, old);
      for (std::size_t uu = 0; uu < n; ++uu) {
        if (!rooted[uu]) continue;
        const auto u = static_cast<Vertex>(uu);
        const double new_cost = base_cost + inst.cost(v, u);
        const double delta = score(v, u) - base_score;
        if (new_cost <= c0 && delta < best_delta) {
          best_delta = delta;
          best_v = v;
          best_u = u;
        }
        if (new_cost < cheap_cost) {
          cheap_cost = new_cost;
          cheap_v = v;
          cheap_u = u;
        }
      }
    }
    if (best_v < 0) {
      best_v = cheap_v;
      best_u = cheap_u;
    }
    const Vertex old = m.f[static_cast<std::size_t>(best_v)];
    cost += inst.cost(best_v, best_u) - inst.cost(best_v, old);
    parent[static_cast<std::size_t>(best_v)] = best_u;
    ++added;
    for (std::size_t v = 0; v < n; ++v) {
      if (d.component_of[v] == static_cast<std::int32_t>(comp)) rooted[v] = 1;
    }
  }

  Arborescence a = make_arborescence(inst, root, std::move(parent));
  if (stats) {
    stats->root = root;
    stats->cycles_broken = static_cast<int>(d.cycles.size());
    stats->edges_added = added;
  }
  if (a.cost > c0) {
    throw Error(Errc::repair_budget_exceeded,
                "repaired arborescence costs " + std::to_string(a.cost) + " > c0 = " + std::to_string(c0));
  }
  return a;
}

}  // namespace cmsa
