#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cmsa/arborescence.hpp"
#include "cmsa/error.hpp"
#include "cmsa/instance.hpp"

namespace cmsa {

namespace detail {

struct ScoredArc {
  int child;
  int parent;
  double score;
  int id;  // index into the previous level's arc list
};

// Chu-Liu/Edmonds: every non-root node picks one parent. Returns the index
// of the chosen arc per node (-1 at the root). O(nodes * arcs) worst case.
inline std::vector<int> chu_liu_edmonds(int nodes, int root, const std::vector<ScoredArc>& arcs) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<int> best(static_cast<std::size_t>(nodes), -1);
  std::vector<double> best_score(static_cast<std::size_t>(nodes), inf);
  for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
    const ScoredArc& a = arcs[static_cast<std::size_t>(k)];
    if (a.child == root || a.child == a.parent) continue;
    if (a.score < best_score[static_cast<std::size_t>(a.child)]) {
      best_score[static_cast<std::size_t>(a.child)] = a.score;
      best[static_cast<std::size_t>(a.child)] = k;
    }
  }
  for (int v = 0; v < nodes; ++v) {
    if (v != root && best[static_cast<std::size_t>(v)] < 0) throw std::logic_error("edmonds: unreachable node");
  }

  auto parent_of = [&](int v) { return arcs[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].parent; };
  std::vector<int> comp(static_cast<std::size_t>(nodes), -1);
  std::vector<int> mark(static_cast<std::size_t>(nodes), -1);
  int next_id = 0;
  for (int v = 0; v < nodes; ++v) {
    int u = v;
    while (u != root && mark[static_cast<std::size_t>(u)] < 0 && comp[static_cast<std::size_t>(u)] < 0) {
      mark[static_cast<std::size_t>(u)] = v;
      u = parent_of(u);
    }
    if (u != root && comp[static_cast<std::size_t>(u)] < 0 && mark[static_cast<std::size_t>(u)] == v) {
      int x = u;
      do {
        comp[static_cast<std::size_t>(x)] = next_id;
        x = parent_of(x);
      } while (x != u);
      ++next_id;
    }
  }
  if (next_id == 0) return best;

  for (int v = 0; v < nodes; ++v) {
    if (comp[static_cast<std::size_t>(v)] < 0) comp[static_cast<std::size_t>(v)] = next_id++;
  }
  std::vector<ScoredArc> contracted;
  contracted.reserve(arcs.size());
  for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
    const ScoredArc& a = arcs[static_cast<std::size_t>(k)];
    if (a.child == root) continue;
    const int cc = comp[static_cast<std::size_t>(a.child)];
    const int cp = comp[static_cast<std::size_t>(a.parent)];
    if (cc == cp) continue;
    contracted.push_back({cc, cp, a.score - best_score[static_cast<std::size_t>(a.child)], k});
  }
  const int croot = comp[static_cast<std::size_t>(root)];
  const std::vector<int> sub = chu_liu_edmonds(next_id, croot, contracted);

  std::vector<int> chosen = best;
  for (int x = 0; x < next_id; ++x) {
    if (x == croot) continue;
    const int k = contracted[static_cast<std::size_t>(sub[static_cast<std::size_t>(x)])].id;
    chosen[static_cast<std::size_t>(arcs[static_cast<std::size_t>(k)].child)] = k;
  }
  return chosen;
}

}  // namespace detail

/// Minimum-score spanning arborescence over all roots, where vertex v
/// paying score(v, p) attaches to parent p. A virtual super-root joined to
/// every vertex at a prohibitive score selects the best root in one run.
/// Intended for n up to a few hundred (dense arc list, O(n^3) worst case).
template <class Score>
Arborescence edmonds(const Instance& inst, Score&& score) {
  const int n = static_cast<int>(inst.n());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<detail::ScoredArc> arcs;
  arcs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    for (int p = 0; p < n; ++p) {
      if (p == v) continue;
      const double sc = score(static_cast<Vertex>(v), static_cast<Vertex>(p));
      require(std::isfinite(sc), Errc::invalid_argument, "edmonds: scores must be finite");
      lo = std::min(lo, sc);
      hi = std::max(hi, sc);
      arcs.push_back({v, p, sc, -1});
    }
  }
  // Any arborescence with two super-root arcs costs more than every one with a single arc.
  const double big = std::abs(hi) + static_cast<double>(n + 1) * (hi - lo + 1.0);
  for (int v = 0; v < n; ++v) arcs.push_back({v, n, big, -1});

  const std::vector<int> chosen = detail::chu_liu_edmonds(n + 1, n, arcs);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoParent);
  Vertex root = -1;
  for (int v = 0; v < n; ++v) {
    const int p = arcs[static_cast<std::size_t>(chosen[static_cast<std::size_t>(v)])].parent;
    if (p == n) {
      if (root >= 0) throw std::logic_error("edmonds: super-root kept more than one arc");
      root = static_cast<Vertex>(v);
    } else {
      parent[static_cast<std::size_t>(v)] = static_cast<Vertex>(p);
    }
  }
  return make_arborescence(inst, root, std::move(parent));
}

inline Arborescence edmonds(const Instance& inst) {
  return edmonds(inst, [&](Vertex v, Vertex p) { return inst.weight(v, p); });
}

}  // namespace cmsa
