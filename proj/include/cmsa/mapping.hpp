#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cmsa/error.hpp"
#include "cmsa/instance.hpp"

namespace cmsa {

/// A function on the vertices without fixed points; vertex i owns the edge
/// (i, f[i]). weight and cost cache the edge sums.
struct Mapping {
  std::vector<Vertex> f;
  double weight = 0.0;
  double cost = 0.0;

  std::size_t size() const noexcept { return f.size(); }
  friend bool operator==(const Mapping& a, const Mapping& b) { return a.f == b.f; }
};

inline Mapping make_mapping(const Instance& inst, std::vector<Vertex> f) {
  require(f.size() == inst.n(), Errc::shape, "mapping length must equal n");
  Mapping m{std::move(f), 0.0, 0.0};
  const auto n = static_cast<Vertex>(inst.n());
  for (Vertex i = 0; i < n; ++i) {
    const Vertex j = m.f[static_cast<std::size_t>(i)];
    require(j >= 0 && j < n && j != i, Errc::invalid_argument, "mapping must be fixed-point free");
    m.weight += inst.weight(i, j);
    m.cost += inst.cost(i, j);
  }
  return m;
}

inline double max_edge_weight(const Instance& inst, const Mapping& m) {
  double w = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) w = std::max(w, inst.weight(static_cast<Vertex>(i), m.f[i]));
  return w;
}

inline double max_edge_cost(const Instance& inst, const Mapping& m) {
  double c = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) c = std::max(c, inst.cost(static_cast<Vertex>(i), m.f[i]));
  return c;
}

}  // namespace cmsa
