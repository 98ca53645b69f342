#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cmsa/instance.hpp"

namespace cmsa {

inline constexpr Vertex kNoParent = -1;

/// Spanning arborescence stored as a parent map. Every non-root vertex v owns
/// the edge (v, parent[v]); parent[root] == kNoParent. weight and cost are
/// sums over those n - 1 edges.
struct Arborescence {
  Vertex root = 0;
  std::vector<Vertex> parent;
  double weight = 0.0;
  double cost = 0.0;
};

inline Arborescence make_arborescence(const Instance& inst, Vertex root, std::vector<Vertex> parent) {
  Arborescence a{root, std::move(parent), 0.0, 0.0};
  for (std::size_t v = 0; v < a.parent.size(); ++v) {
    if (static_cast<Vertex>(v) == root) continue;
    a.weight += inst.weight(static_cast<Vertex>(v), a.parent[v]);
    a.cost += inst.cost(static_cast<Vertex>(v), a.parent[v]);
  }
  return a;
}

struct Validation {
  bool ok = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const noexcept { return ok; }
  void fail(std::string msg) {
    ok = false;
    diagnostics.push_back(std::move(msg));
  }
};

inline Validation validate(const Arborescence& a, const Instance& inst) {
  Validation out;
  const std::size_t n = inst.n();
  if (a.parent.size() != n) {
    out.fail("parent array has " + std::to_string(a.parent.size()) + " entries, expected " + std::to_string(n));
    return out;
  }
  if (a.root < 0 || static_cast<std::size_t>(a.root) >= n) {
    out.fail("root " + std::to_string(a.root) + " out of range");
    return out;
  }
  std::size_t edges = 0;
  bool shape_ok = true;
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex p = a.parent[v];
    if (static_cast<Vertex>(v) == a.root) {
      if (p != kNoParent) {
        out.fail("root " + std::to_string(v) + " has a parent");
        shape_ok = false;
      }
      continue;
    }
    if (p == kNoParent) {
      out.fail("non-root vertex " + std::to_string(v) + " has no parent");
      shape_ok = false;
    } else if (p < 0 || static_cast<std::size_t>(p) >= n || p == static_cast<Vertex>(v)) {
      out.fail("vertex " + std::to_string(v) + " has invalid parent " + std::to_string(p));
      shape_ok = false;
    } else {
      ++edges;
    }
  }
  if (edges != n - 1) out.fail("has " + std::to_string(edges) + " edges, expected " + std::to_string(n - 1));
  if (!shape_ok) return out;

  // Parent chasing bounded by n steps from every vertex.
  std::vector<std::uint8_t> reaches_root(n, 0);
  reaches_root[static_cast<std::size_t>(a.root)] = 1;
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<Vertex> trail;
    auto v = static_cast<Vertex>(start);
    std::size_t steps = 0;
    while (!reaches_root[static_cast<std::size_t>(v)] && steps <= n) {
      trail.push_back(v);
      v = a.parent[static_cast<std::size_t>(v)];
      ++steps;
    }
    if (!reaches_root[static_cast<std::size_t>(v)]) {
      // v is on a cycle; name it.
      std::string cyc;
      Vertex u = v;
      do {
        cyc += (cyc.empty() ? "" : "->") + std::to_string(u);
        u = a.parent[static_cast<std::size_t>(u)];
      } while (u != v);
      out.fail("cycle " + cyc + "->" + std::to_string(v) + " never reaches the root");
      return out;
    }
    for (Vertex u : trail) reaches_root[static_cast<std::size_t>(u)] = 1;
  }

  double w = 0.0;
  double c = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<Vertex>(v) == a.root) continue;
    w += inst.weight(static_cast<Vertex>(v), a.parent[v]);
    c += inst.cost(static_cast<Vertex>(v), a.parent[v]);
  }
  if (std::abs(w - a.weight) > 1e-9) {
    out.fail("weight field " + std::to_string(a.weight) + " does not match recomputed " + std::to_string(w));
  }
  if (std::abs(c - a.cost) > 1e-9) {
    out.fail("cost field " + std::to_string(a.cost) + " does not match recomputed " + std::to_string(c));
  }
  return out;
}

}  // namespace cmsa
