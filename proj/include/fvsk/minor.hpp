#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"

// Exact minor tests for the small biconnected patterns used by the gadget
// verifier. Each test is a structural characterization rather than a search.

namespace fvsk {

enum class SmallPattern { kTriangle, kCycle4, kDiamond, kK4 };

inline const char* to_string(SmallPattern p) {
  switch (p) {
    case SmallPattern::kTriangle: return "K3";
    case SmallPattern::kCycle4: return "C4";
    case SmallPattern::kDiamond: return "diamond";
    case SmallPattern::kK4: return "K4";
  }
  return "unknown";
}

/// Identifies `h` up to isomorphism, or throws UnsupportedPatternError.
inline SmallPattern classify_pattern(const Graph& h) {
  const std::size_t n = h.vertex_count(), m = h.edge_count();
  if (is_connected(h)) {
    if (n == 3 && m == 3) return SmallPattern::kTriangle;
    if (n == 4 && m == 4) {
      auto vs = h.vertices();
      if (std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return h.degree(v) == 2; }))
        return SmallPattern::kCycle4;
    }
    if (n == 4 && m == 5) return SmallPattern::kDiamond;
    if (n == 4 && m == 6) return SmallPattern::kK4;
  }
  throw UnsupportedPatternError("no exact minor test for a pattern with " + std::to_string(n) +
                                " vertices and " + std::to_string(m) + " edges");
}

namespace detail {

inline std::size_t edges_within(const Graph& g, const VertexSet& block) {
  std::size_t m = 0;
  for (Vertex v : block) m += g.neighbors_in(v, block);
  return m / 2;
}

// Series-parallel reduction: K4-minor-free iff repeatedly deleting vertices
// of degree <= 1 and suppressing vertices of degree 2 empties the graph.
inline bool has_k4_minor(Graph g) {
  bool changed = true;
  while (changed && !g.empty()) {
    changed = false;
    for (Vertex v : g.vertices()) {
      if (g.degree(v) > 2) continue;
      if (g.degree(v) == 2) {
        Vertex a = g.neighbors(v)[0], b = g.neighbors(v)[1];
        g.remove_vertex(v);
        g.add_edge(a, b);
      } else {
        g.remove_vertex(v);
      }
      changed = true;
      break;
    }
  }
  return !g.empty();
}

}  // namespace detail

inline bool has_minor(const Graph& g, SmallPattern p) {
  switch (p) {
    case SmallPattern::kTriangle:
      return !is_forest(g);
    case SmallPattern::kCycle4:
      for (const VertexSet& b : biconnected_components(g))
        if (b.size() >= 4) return true;
      return false;
    case SmallPattern::kDiamond:
      // Diamond-minor-free graphs are exactly those whose blocks are edges or cycles.
      for (const VertexSet& b : biconnected_components(g))
        if (b.size() >= 3 && detail::edges_within(g, b) > b.size()) return true;
      return false;
    case SmallPattern::kK4:
      return detail::has_k4_minor(g);
  }
  return false;
}

/// True iff `g` contains `h` as a minor; `h` must be one of the small patterns.
inline bool has_minor(const Graph& g, const Graph& h) { return has_minor(g, classify_pattern(h)); }

}  // namespace fvsk
