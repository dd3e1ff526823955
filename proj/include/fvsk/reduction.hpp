#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/minor.hpp"

namespace fvsk {

/// Bead pattern with the two anchors used to chain consecutive beads.
struct NecklaceStructure {
  Graph pattern;
  Vertex x_anchor = 0;
  Vertex y_anchor = 1;
};

/// (K3, 0, 1).
inline NecklaceStructure k3_structure() {
  return {Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), 0, 1};
}

namespace detail {

inline void require_pattern(const Graph& h, const char* what) {
  if (h.vertex_count() < 3) throw InputError(std::string(what) + " needs at least three vertices");
  auto blocks = biconnected_components(h);
  if (blocks.size() != 1 || blocks.front() != h.vertices())
    throw InputError(std::string(what) + " must be biconnected");
}

// Position of each pattern vertex in ascending order.
inline std::vector<int> pattern_index(const Graph& h) {
  std::vector<int> index(h.id_bound(), -1);
  int i = 0;
  for (Vertex v : h.vertices()) index[static_cast<std::size_t>(v)] = i++;
  return index;
}

}  // namespace detail

struct Necklace {
  Graph graph;
  std::vector<VertexSet> beads;
};

/// `length` copies of the pattern; bead i occupies ids [i*c, (i+1)*c) and
/// copy_i(x) is joined to copy_{i+1}(y).
inline Necklace build_uniform_necklace(const NecklaceStructure& s, std::size_t length) {
  if (length < 1) throw InputError("necklace length must be at least 1");
  const Graph& h = s.pattern;
  if (!is_connected(h) || h.empty()) throw InputError("bead pattern must be connected");
  h.require_vertex(s.x_anchor);
  h.require_vertex(s.y_anchor);
  if (s.x_anchor == s.y_anchor) throw InputError("anchors must be distinct");
  const auto index = detail::pattern_index(h);
  const auto c = static_cast<Vertex>(h.vertex_count());
  auto id = [&](std::size_t bead, Vertex p) {
    return static_cast<Vertex>(bead) * c + index[static_cast<std::size_t>(p)];
  };
  Necklace out{Graph(length * static_cast<std::size_t>(c)), {}};
  for (std::size_t b = 0; b < length; ++b) {
    std::vector<Vertex> bead;
    for (Vertex p : h.vertices()) bead.push_back(id(b, p));
    out.beads.emplace_back(std::move(bead));
    for (auto [p, q] : h.edges()) out.graph.add_edge(id(b, p), id(b, q));
    if (b + 1 < length) out.graph.add_edge(id(b, s.x_anchor), id(b + 1, s.y_anchor));
  }
  return out;
}

/// J_{H,v,x,y}. x_side[k] and y_side[k] are the images of the k-th pattern
/// vertex other than v; d[i][j] holds the c-2 vertices that complete a copy
/// of H with x_side[i] (image of x) and y_side[j] (image of y).
struct Gadget {
  Graph graph;
  std::vector<Vertex> x_side;
  std::vector<Vertex> y_side;
  std::vector<std::vector<VertexSet>> d;

  VertexSet x_set() const { return VertexSet(x_side); }
  VertexSet y_set() const { return VertexSet(y_side); }
};

/// Ids: X = 0..c-2, Y = c-1..2c-3, then the D sets in (i, j) order.
inline Gadget build_gadget(const Graph& h, Vertex v, Vertex x, Vertex y) {
  detail::require_pattern(h, "gadget pattern");
  h.require_vertex(v);
  h.require_vertex(x);
  h.require_vertex(y);
  if (x == y) throw InputError("gadget anchors x and y must be distinct");
  const std::size_t c = h.vertex_count();

  std::vector<Vertex> rest;  // pattern vertices other than v
  for (Vertex p : h.vertices())
    if (p != v) rest.push_back(p);
  std::vector<Vertex> inner;  // pattern vertices other than x and y
  for (Vertex p : h.vertices())
    if (p != x && p != y) inner.push_back(p);

  Gadget out;
  out.graph = Graph(2 * (c - 1) + (c - 1) * (c - 1) * (c - 2));
  std::vector<Vertex> slot(h.id_bound(), -1);
  for (std::size_t k = 0; k < rest.size(); ++k) slot[static_cast<std::size_t>(rest[k])] = static_cast<Vertex>(k);
  for (std::size_t k = 0; k < c - 1; ++k) {
    out.x_side.push_back(static_cast<Vertex>(k));
    out.y_side.push_back(static_cast<Vertex>(c - 1 + k));
  }
  for (auto [p, q] : h.edges()) {
    if (p == v || q == v) continue;
    const auto sp = static_cast<std::size_t>(slot[static_cast<std::size_t>(p)]);
    const auto sq = static_cast<std::size_t>(slot[static_cast<std::size_t>(q)]);
    out.graph.add_edge(out.x_side[sp], out.x_side[sq]);
    out.graph.add_edge(out.y_side[sp], out.y_side[sq]);
  }

  auto next = static_cast<Vertex>(2 * (c - 1));
  out.d.assign(c - 1, std::vector<VertexSet>(c - 1));
  std::vector<Vertex> image(h.id_bound(), -1);
  for (std::size_t i = 0; i < c - 1; ++i) {
    for (std::size_t j = 0; j < c - 1; ++j) {
      image[static_cast<std::size_t>(x)] = out.x_side[i];
      image[static_cast<std::size_t>(y)] = out.y_side[j];
      std::vector<Vertex> fresh;
      for (Vertex p : inner) {
        image[static_cast<std::size_t>(p)] = next;
        fresh.push_back(next++);
      }
      for (auto [p, q] : h.edges())
        out.graph.add_edge(image[static_cast<std::size_t>(p)], image[static_cast<std::size_t>(q)]);
      out.d[i][j] = VertexSet(std::move(fresh));
    }
  }
  return out;
}

/// True iff for every Z with |Z| <= c-1: j - Z has no H-minor exactly when
/// Z is X or Y.
inline bool verify_gadget(const Gadget& j, const Graph& h) {
  const SmallPattern pattern = classify_pattern(h);
  const VertexSet xs = j.x_set(), ys = j.y_set();
  bool ok = true;
  for_each_subset_up_to(j.graph.vertices(), h.vertex_count() - 1, [&](const VertexSet& z) {
    if (!ok) return;
    const bool minor_free = !has_minor(j.graph.without(z), pattern);
    if (minor_free != (z == xs || z == ys)) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// CNF formulas and the deletion reduction.

struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based variable indices

  void validate() const {
    if (variable_count < 0) throw InputError("negative variable count");
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      if (clauses[i].empty()) throw InputError("clause " + std::to_string(i + 1) + " is empty");
      for (int lit : clauses[i])
        if (lit == 0 || std::abs(lit) > variable_count)
          throw InputError("literal " + std::to_string(lit) + " out of range");
    }
  }

  std::size_t literal_occurrences() const {
    std::size_t w = 0;
    for (const auto& c : clauses) w += c.size();
    return w;
  }

  /// assignment[i] is the value of variable i+1.
  bool evaluate(const std::vector<bool>& assignment) const {
    return std::all_of(clauses.begin(), clauses.end(), [&](const std::vector<int>& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](int lit) {
        return assignment[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
      });
    });
  }
};

/// Truth-table satisfiability; returns a satisfying assignment if any.
inline std::optional<std::vector<bool>> satisfying_assignment(const CnfFormula& f) {
  f.validate();
  if (f.variable_count > 24) throw InputError("truth-table check limited to 24 variables");
  const auto n = static_cast<std::size_t>(f.variable_count);
  std::vector<bool> a(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1;
    if (f.evaluate(a)) return a;
  }
  return std::nullopt;
}

inline bool satisfiable(const CnfFormula& f) { return satisfying_assignment(f).has_value(); }

struct ReductionInstance {
  Graph graph;
  VertexSet modulator;
  std::size_t budget = 0;
  std::size_t pattern_size = 0;           // c
  std::vector<VertexSet> positive;        // V_{x_i}, index i-1
  std::vector<VertexSet> negative;        // V_{not x_i}
  std::vector<VertexSet> gadgets;         // all vertices of gadget i
  std::vector<std::vector<VertexSet>> beads;  // clause -> bead vertex sets
  std::vector<std::vector<Vertex>> hooks;     // clause -> bead vertex joined to V_l
  VertexSet s0;
  std::vector<VertexSet> packing;         // pairwise disjoint H-minor models, |packing| = budget

  const VertexSet& literal_set(int lit) const {
    const auto i = static_cast<std::size_t>(std::abs(lit) - 1);
    return lit > 0 ? positive[i] : negative[i];
  }
};

/// Builds (G, X, t) from f with t = w + (c-1)n and |X| = 2n(c-1) + c.
///   1. one gadget J_{H,v,x,y} per variable, v the lowest pattern vertex;
///   2. one uniform necklace per clause; in bead i the copy of the lowest
///      pattern vertex outside {x, y} is joined to the images of N_H(v) in
///      V_{l_i}, so that it plays v;
///   3. a copy S0 of H minus its lowest edge ab, with a joined to copy(y)
///      of the first bead and b to copy(x) of the last bead.
inline ReductionInstance reduce_cnf(const CnfFormula& f, const NecklaceStructure& s) {
  f.validate();
  const Graph& h = s.pattern;
  detail::require_pattern(h, "necklace pattern");
  h.require_vertex(s.x_anchor);
  h.require_vertex(s.y_anchor);
  if (s.x_anchor == s.y_anchor) throw InputError("anchors must be distinct");

  const std::size_t c = h.vertex_count();
  const Vertex v = h.vertices().front();
  const auto index = detail::pattern_index(h);

  Vertex hook = -1;
  for (Vertex p : h.vertices())
    if (p != s.x_anchor && p != s.y_anchor) { hook = p; break; }
  if (hook < 0) throw ConstructionError("no bead vertex is free of necklace links");

  ReductionInstance out;
  out.pattern_size = c;
  const auto n = static_cast<std::size_t>(f.variable_count);
  const std::size_t w = f.literal_occurrences();
  const std::size_t gadget_size = 2 * (c - 1) + (c - 1) * (c - 1) * (c - 2);
  out.graph = Graph(n * gadget_size + w * c + c);
  out.budget = w + (c - 1) * n;

  // Slot of each pattern vertex other than v inside X or Y of a gadget.
  std::vector<int> slot(h.id_bound(), -1);
  {
    int k = 0;
    for (Vertex p : h.vertices())
      if (p != v) slot[static_cast<std::size_t>(p)] = k++;
  }

  const Gadget proto = build_gadget(h, v, s.x_anchor, s.y_anchor);
  Vertex base = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [a, b] : proto.graph.edges()) out.graph.add_edge(base + a, base + b);
    auto shift = [&](const std::vector<Vertex>& ids) {
      std::vector<Vertex> moved;
      for (Vertex id : ids) moved.push_back(base + id);
      return VertexSet(std::move(moved));
    };
    out.positive.push_back(shift(proto.x_side));
    out.negative.push_back(shift(proto.y_side));
    std::vector<Vertex> all(gadget_size);
    for (std::size_t k = 0; k < gadget_size; ++k) all[k] = base + static_cast<Vertex>(k);
    out.gadgets.emplace_back(std::move(all));
    for (std::size_t j = 0; j < c - 1; ++j) {
      VertexSet element = shift(proto.d[j][j].members());
      element.insert(base + proto.x_side[j]);
      element.insert(base + proto.y_side[j]);
      out.packing.push_back(std::move(element));
    }
    base += static_cast<Vertex>(gadget_size);
  }

  const Vertex s0_base = static_cast<Vertex>(n * gadget_size + w * c);
  const auto s0_edges = h.edges();
  const Edge cut_edge = s0_edges.front();
  auto s0_id = [&](Vertex p) { return s0_base + index[static_cast<std::size_t>(p)]; };

  for (const auto& clause : f.clauses) {
    Necklace neck = build_uniform_necklace(s, clause.size());
    for (auto [a, b] : neck.graph.edges()) out.graph.add_edge(base + a, base + b);
    std::vector<VertexSet> beads;
    std::vector<Vertex> hooks;
    for (std::size_t i = 0; i < clause.size(); ++i) {
      std::vector<Vertex> bead;
      for (Vertex b : neck.beads[i]) bead.push_back(base + b);
      beads.emplace_back(std::move(bead));
      const Vertex u = base + static_cast<Vertex>(i * c) + index[static_cast<std::size_t>(hook)];
      hooks.push_back(u);
      const VertexSet& lit = out.literal_set(clause[i]);
      for (Vertex p : h.neighbors(v))
        out.graph.add_edge(u, lit.members()[static_cast<std::size_t>(slot[static_cast<std::size_t>(p)])]);
      out.packing.push_back(beads.back());
    }
    const Vertex first_y = base + index[static_cast<std::size_t>(s.y_anchor)];
    const Vertex last_x =
        base + static_cast<Vertex>((clause.size() - 1) * c) + index[static_cast<std::size_t>(s.x_anchor)];
    out.graph.add_edge(s0_id(cut_edge.first), first_y);
    out.graph.add_edge(s0_id(cut_edge.second), last_x);
    out.beads.push_back(std::move(beads));
    out.hooks.push_back(std::move(hooks));
    base += static_cast<Vertex>(clause.size() * c);
  }

  std::vector<Vertex> s0;
  for (Vertex p : h.vertices()) s0.push_back(s0_id(p));
  out.s0 = VertexSet(std::move(s0));
  for (std::size_t k = 1; k < s0_edges.size(); ++k)
    out.graph.add_edge(s0_id(s0_edges[k].first), s0_id(s0_edges[k].second));

  VertexSet mod = out.s0;
  for (std::size_t i = 0; i < n; ++i) mod = set_union(mod, set_union(out.positive[i], out.negative[i]));
  out.modulator = std::move(mod);
  return out;
}

namespace detail {

// Backtracking over the packing: each element loses exactly one vertex and
// every other vertex stays. Kept vertices are tested for the pattern after
// each element, which is sound because minors survive adding vertices.
class PackingSearch {
 public:
  PackingSearch(const Graph& g, const std::vector<VertexSet>& packing, SmallPattern pattern)
      : g_(g), packing_(packing), pattern_(pattern) {}

  std::optional<VertexSet> run() {
    VertexSet in_packing;
    for (const VertexSet& e : packing_) in_packing = set_union(in_packing, e);
    kept_ = set_difference(g_.vertices(), in_packing);
    if (has_minor(g_.induced(kept_), pattern_)) return std::nullopt;
    if (!search(0)) return std::nullopt;
    return VertexSet(deleted_);
  }

 private:
  bool search(std::size_t element) {
    if (element == packing_.size()) return true;
    const VertexSet& e = packing_[element];
    for (Vertex drop : e) {
      VertexSet before = kept_;
      for (Vertex k : e)
        if (k != drop) kept_.insert(k);
      deleted_.push_back(drop);
      if (!has_minor(g_.induced(kept_), pattern_) && search(element + 1)) return true;
      deleted_.pop_back();
      kept_ = std::move(before);
    }
    return false;
  }

  const Graph& g_;
  const std::vector<VertexSet>& packing_;
  SmallPattern pattern_;
  VertexSet kept_;
  std::vector<Vertex> deleted_;
};

}  // namespace detail

/// A pattern-minor deletion set of size `budget`, if one exists. Because the
/// packing holds `budget` disjoint models, no smaller set exists, and any set
/// of that size takes exactly one vertex from each model.
inline std::optional<VertexSet> find_deletion_set(const ReductionInstance& r, const Graph& pattern) {
  return detail::PackingSearch(r.graph, r.packing, classify_pattern(pattern)).run();
}

/// Reads x_i = true iff V_{x_i} lies inside the deletion set.
inline std::vector<bool> extract_assignment(const ReductionInstance& r, const VertexSet& deletion) {
  std::vector<bool> a;
  for (const VertexSet& pos : r.positive) a.push_back(pos.is_subset_of(deletion));
  return a;
}

// Sidecar record:
//   budget <t>
//   pattern_size <c>
//   modulator <ids...>
//   literal <+i|-i> <ids...>
//   bead <clause> <position> <literal> hook <u> <ids...>
//   s0 <ids...>

inline void write_reduction_sidecar(std::ostream& out, const ReductionInstance& r, const CnfFormula& f) {
  auto ids = [&](const VertexSet& s) {
    for (Vertex v : s) out << ' ' << v;
    out << '\n';
  };
  out << "budget " << r.budget << '\n';
  out << "pattern_size " << r.pattern_size << '\n';
  out << "modulator";
  ids(r.modulator);
  for (std::size_t i = 0; i < r.positive.size(); ++i) {
    out << "literal +" << i + 1;
    ids(r.positive[i]);
    out << "literal -" << i + 1;
    ids(r.negative[i]);
  }
  for (std::size_t c = 0; c < r.beads.size(); ++c)
    for (std::size_t b = 0; b < r.beads[c].size(); ++b) {
      out << "bead " << c + 1 << ' ' << b + 1 << ' ' << f.clauses[c][b] << " hook " << r.hooks[c][b];
      ids(r.beads[c][b]);
    }
  out << "s0";
  ids(r.s0);
}

}  // namespace fvsk
