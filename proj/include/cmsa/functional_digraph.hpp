#pragma once

#include <cstdint>
#include <vector>

#include "cmsa/error.hpp"
#include "cmsa/instance.hpp"
#include "cmsa/mapping.hpp"

namespace cmsa {

/// Components of the digraph {(i, f(i))}: each is one directed cycle with
/// in-trees hanging off it. cycles[k] is the cycle of component k.
struct FunctionalDigraphDecomposition {
  std::vector<std::vector<Vertex>> cycles;
  std::vector<std::int32_t> component_of;
  std::vector<std::size_t> component_sizes;
  std::int32_t largest_component = 0;  // ties go to the smaller id

  std::size_t cycle_count() const noexcept { return cycles.size(); }
};

/// Pointer chasing with three-colour marking; O(n).
inline FunctionalDigraphDecomposition decompose(const std::vector<Vertex>& f) {
  const std::size_t n = f.size();
  enum : std::uint8_t { unseen, on_path, done };
  std::vector<std::uint8_t> colour(n, unseen);
  FunctionalDigraphDecomposition d;
  d.component_of.assign(n, -1);
  std::vector<Vertex> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (colour[start] != unseen) continue;
    path.clear();
    auto v = static_cast<Vertex>(start);
    while (colour[static_cast<std::size_t>(v)] == unseen) {
      colour[static_cast<std::size_t>(v)] = on_path;
      path.push_back(v);
      v = f[static_cast<std::size_t>(v)];
    }
    std::int32_t comp;
    if (colour[static_cast<std::size_t>(v)] == on_path) {
      comp = static_cast<std::int32_t>(d.cycles.size());
      auto it = path.end();
      while (*(it - 1) != v) --it;
      --it;
      d.cycles.emplace_back(it, path.end());
      d.component_sizes.push_back(0);
    } else {
      comp = d.component_of[static_cast<std::size_t>(v)];
    }
    for (Vertex u : path) {
      colour[static_cast<std::size_t>(u)] = done;
      d.component_of[static_cast<std::size_t>(u)] = comp;
    }
    d.component_sizes[static_cast<std::size_t>(comp)] += path.size();
  }
  for (std::size_t k = 1; k < d.component_sizes.size(); ++k) {
    if (d.component_sizes[k] > d.component_sizes[static_cast<std::size_t>(d.largest_component)]) {
      d.largest_component = static_cast<std::int32_t>(k);
    }
  }
  return d;
}

inline FunctionalDigraphDecomposition decompose(const Mapping& m) { return decompose(m.f); }

/// Uniformly random fixed-point-free mapping on n >= 2 vertices.
inline std::vector<Vertex> random_mapping(std::size_t n, std::uint64_t seed) {
  require(n >= 2 && n < (std::size_t{1} << 31), Errc::invalid_argument, "random_mapping needs 2 <= n < 2^31");
  std::vector<Vertex> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bits = rng::hash(seed, i, 0, rng::Stream::mapping);
    // Multiply-shift of the top 32 bits into [0, n - 1), then skip i.
    auto j = static_cast<std::size_t>(((bits >> 32) * static_cast<std::uint64_t>(n - 1)) >> 32);
    if (j >= i) ++j;
    f[i] = static_cast<Vertex>(j);
  }
  return f;
}

}  // namespace cmsa
