#pragma once

#include <vector>

#include "cmsa/instance.hpp"

namespace cmsa::testing {

// Three vertices, 0-based. Row minima of W give f = (1, 2, 1).
//   W: 0->1 0.20, 0->2 0.70, 1->0 0.50, 1->2 0.10, 2->0 0.90, 2->1 0.40
//   C: 0->1 0.60, 0->2 0.15, 1->0 0.20, 1->2 0.80, 2->0 0.30, 2->1 0.50
inline Instance tiny3() {
  std::vector<double> w = {0, 0.20, 0.70, 0.50, 0, 0.10, 0.90, 0.40, 0};
  std::vector<double> c = {0, 0.60, 0.15, 0.20, 0, 0.80, 0.30, 0.50, 0};
  return Instance(3, 1.0, 0, std::move(w), std::move(c));
}

// Dense instance from explicit row-major entries (diagonal ignored).
inline Instance from_rows(std::size_t n, std::vector<double> w, std::vector<double> c) {
  return Instance(n, 1.0, 0, std::move(w), std::move(c));
}

}  // namespace cmsa::testing
