#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fvsk/elim.hpp"
#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/io.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/solver.hpp"
#include "fvsk/tree_decomposition.hpp"

namespace fvsk {

/// Vertices of a component with at least two (s_high) or exactly one (t_one)
/// neighbor in the modulator.
struct BoundaryProfile {
  VertexSet component;
  VertexSet s_high;
  VertexSet t_one;
};

/// Profile of `c` against an arbitrary vertex set `x0`. No component check.
inline BoundaryProfile label_sets(const Graph& g, const VertexSet& x0, const VertexSet& c) {
  BoundaryProfile p{c, {}, {}};
  std::vector<Vertex> s, t;
  for (Vertex v : c) {
    std::size_t k = g.neighbors_in(v, x0);
    if (k >= 2) s.push_back(v);
    else if (k == 1) t.push_back(v);
  }
  p.s_high = VertexSet(std::move(s));
  p.t_one = VertexSet(std::move(t));
  return p;
}

inline BoundaryProfile boundary_profile(const Graph& g, const VertexSet& x, const VertexSet& c) {
  g.require_subset(x, "modulator");
  auto comps = connected_components(g.without(x));
  if (std::find(comps.begin(), comps.end(), c) == comps.end())
    throw InputError("vertex set is not a component of the graph minus the modulator");
  return label_sets(g, x, c);
}

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

}  // namespace detail

/// Label-set bound for elimination distance eta:
///   nodes   = sum_{i=0..eta} (3*eta*2^eta)^i   (labeled nodes, at most eta layers)
///   per bag = (eta+1) + max(2*eta+2, 2*eta*(eta+2)+eta)
///   gamma   = nodes * per bag
/// gamma(0) = 3, gamma(1) = 63, gamma(2) = 12621. Saturates at UINT64_MAX.
inline std::uint64_t gamma_bound(int eta) {
  if (eta < 0) throw InputError("eta must be non-negative");
  const auto e = static_cast<std::uint64_t>(eta);
  const std::uint64_t branching = detail::saturating_mul(3 * e, std::uint64_t{1} << std::min<std::uint64_t>(e, 63));
  std::uint64_t nodes = 0, power = 1;
  for (int i = 0; i <= eta; ++i) {
    nodes = detail::saturating_add(nodes, power);
    power = detail::saturating_mul(power, branching);
  }
  const std::uint64_t per_bag = (e + 1) + std::max(2 * e + 2, 2 * e * (e + 2) + e);
  return detail::saturating_mul(nodes, per_bag);
}

/// gamma defaults to gamma_bound(eta). Overrides are sound only when
/// gamma >= gamma_bound(eta). subset_cap further limits |X0|.
struct GammaConfig {
  std::optional<std::uint64_t> gamma;
  std::optional<std::size_t> subset_cap;

  std::uint64_t gamma_for(int eta) const { return gamma ? *gamma : gamma_bound(eta); }

  std::uint64_t tau(std::size_t modulator_size, int eta) const {
    return detail::saturating_add(modulator_size + 1, detail::saturating_mul(3, gamma_for(eta)));
  }

  std::size_t max_subset_size(std::size_t modulator_size, int eta) const {
    std::uint64_t limit = std::min<std::uint64_t>(detail::saturating_mul(3, gamma_for(eta)), modulator_size);
    if (subset_cap) limit = std::min<std::uint64_t>(limit, *subset_cap);
    return static_cast<std::size_t>(limit);
  }
};

struct RoundStats {
  int eta = 0;
  std::uint64_t gamma = 0;
  std::uint64_t tau = 0;
  std::size_t subsets = 0;       // X0 sets enumerated
  std::size_t components = 0;    // components of G - X
  std::size_t dropped = 0;
  std::size_t max_retained = 0;  // largest number of components kept for one X0
};

struct KernelStep {
  Graph reduced;
  std::uint64_t delta = 0;
  VertexSet modulator;
  int eta_remaining = 0;
  std::vector<RoundStats> rounds;
};

namespace detail {

struct ComponentInfo {
  VertexSet vertices;
  Graph graph;
  TreeDecomposition td;
  std::map<std::pair<VertexSet, VertexSet>, bool> admits;  // memo on (S, T)
};

inline std::vector<ComponentInfo> analyse_components(const Graph& g, const VertexSet& x, int eta) {
  std::vector<ComponentInfo> out;
  for (const VertexSet& c : connected_components(g.without(x))) {
    Graph sub = g.induced(c);
    auto ef = compute_elimination_forest(sub, eta);
    if (!ef)
      throw InputError("component with minimum vertex " + std::to_string(c.front()) +
                       " has elimination distance above " + std::to_string(eta));
    out.push_back({c, sub, tree_decomposition_from_elimination_forest(sub, *ef), {}});
  }
  return out;
}

}  // namespace detail

/// One application of the component reduction rule. For every X0 of X with
/// |X0| <= min(3*gamma, subset_cap), a component is bad when no minimum
/// feedback vertex set of it contains S(C, X0) and separates T(C, X0). Up to
/// tau bad components per X0 (lowest minimum id first) are kept; the others
/// are removed and their fvs added to delta.
inline KernelStep reduce_components(const Graph& g, const VertexSet& x, int eta, const GammaConfig& cfg = {}) {
  if (eta < 0) throw InputError("eta must be non-negative");
  g.require_subset(x, "modulator");
  auto comps = detail::analyse_components(g, x, eta);

  RoundStats stats;
  stats.eta = eta;
  stats.gamma = cfg.gamma_for(eta);
  stats.tau = cfg.tau(x.size(), eta);
  stats.components = comps.size();

  std::vector<char> keep(comps.size(), 0);
  for_each_subset_up_to(x, cfg.max_subset_size(x.size(), eta), [&](const VertexSet& x0) {
    ++stats.subsets;
    std::size_t retained = 0;
    for (auto& info : comps) {
      if (retained >= stats.tau) break;
      BoundaryProfile p = label_sets(g, x0, info.vertices);
      auto key = std::make_pair(p.s_high, p.t_one);
      auto it = info.admits.find(key);
      if (it == info.admits.end())
        it = info.admits.emplace(key, exists_min_fvs_with(info.graph, info.td, {p.s_high, p.t_one})).first;
      if (it->second) continue;
      keep[static_cast<std::size_t>(&info - comps.data())] = 1;
      ++retained;
    }
    stats.max_retained = std::max(stats.max_retained, retained);
  });

  KernelStep step;
  step.modulator = x;
  step.eta_remaining = eta;
  VertexSet kept = x;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (keep[i]) {
      kept = set_union(kept, comps[i].vertices);
    } else {
      step.delta += static_cast<std::uint64_t>(fvs_size(comps[i].graph, comps[i].td));
      ++stats.dropped;
    }
  }
  step.reduced = g.induced(kept);
  step.rounds.push_back(stats);
  return step;
}

/// Adds to x, for each component of g - x with elimination distance exactly
/// eta, the lowest-id vertex whose removal lowers it.
inline VertexSet extend_modulator(const Graph& g, const VertexSet& x, int eta) {
  if (eta <= 0) throw InputError("extend_modulator needs eta >= 1");
  g.require_subset(x, "modulator");
  VertexSet out = x;
  for (const VertexSet& c : connected_components(g.without(x))) {
    Graph sub = g.induced(c);
    auto ed = elimination_distance_to_forest(sub, eta);
    if (!ed)
      throw InputError("component with minimum vertex " + std::to_string(c.front()) +
                       " has elimination distance above " + std::to_string(eta));
    if (*ed < eta) continue;
    for (Vertex v : c) {
      if (elimination_distance_to_forest(sub.without(VertexSet{v}), eta - 1)) {
        out.insert(v);
        break;
      }
    }
  }
  return out;
}

/// Exhaustive simple-graph reductions for a forest modulator:
///   - delete a vertex of degree <= 1;
///   - bypass a degree-2 vertex v outside x whose neighbors are not adjacent;
///   - if a degree-2 vertex v has adjacent neighbors u, w and deg(u) == 2,
///     put w into the solution (delta + 1).
/// The reduced graph is a minor of g, not necessarily an induced subgraph.
inline KernelStep base_case_kernel(const Graph& g, const VertexSet& x) {
  g.require_subset(x, "modulator");
  if (!is_forest(g.without(x))) throw InputError("graph minus modulator is not a forest");
  KernelStep step;
  Graph h = g;
  VertexSet mod = x;

  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : h.vertices()) {
      const std::size_t d = h.degree(v);
      if (d <= 1) {
        h.remove_vertex(v);
        mod.erase(v);
        changed = true;
        break;
      }
      if (d != 2) continue;
      const Vertex u = h.neighbors(v)[0], w = h.neighbors(v)[1];
      if (!h.has_edge(u, w)) {
        if (mod.contains(v)) continue;
        h.remove_vertex(v);
        h.add_edge(u, w);
        changed = true;
        break;
      }
      Vertex forced = -1;
      if (h.degree(u) == 2) forced = w;
      else if (h.degree(w) == 2) forced = u;
      if (forced < 0) continue;
      h.remove_vertex(forced);
      mod.erase(forced);
      ++step.delta;
      changed = true;
      break;
    }
  }
  step.reduced = std::move(h);
  step.modulator = std::move(mod);
  step.eta_remaining = 0;
  return step;
}

/// Repeats reduce_components and extend_modulator while eta > 0, then
/// finishes with base_case_kernel.
inline KernelStep kernelize(const Graph& g, const VertexSet& x, int eta, const GammaConfig& cfg = {}) {
  if (eta < 0) throw InputError("eta must be non-negative");
  g.require_subset(x, "modulator");
  if (!elimination_distance_to_forest(g.without(x), eta))
    throw InputError("modulator invalid: elimination distance of the remainder exceeds " +
                     std::to_string(eta));
  KernelStep total;
  Graph current = g;
  VertexSet mod = x;
  for (int level = eta; level > 0; --level) {
    KernelStep step = reduce_components(current, mod, level, cfg);
    total.delta += step.delta;
    total.rounds.insert(total.rounds.end(), step.rounds.begin(), step.rounds.end());
    current = std::move(step.reduced);
    mod = extend_modulator(current, mod, level);
  }
  KernelStep base = base_case_kernel(current, mod);
  total.delta += base.delta;
  total.reduced = std::move(base.reduced);
  total.modulator = std::move(base.modulator);
  total.eta_remaining = 0;
  return total;
}

// ---------------------------------------------------------------------------
// Label-set reductions.

namespace detail {

// True iff no listed minimum feedback vertex set contains s and separates t.
inline bool blocks_all(const Graph& g, const std::vector<VertexSet>& minimum, const VertexSet& s,
                       const VertexSet& t) {
  return std::none_of(minimum.begin(), minimum.end(), [&](const VertexSet& m) {
    return s.is_subset_of(m) && separates(g, m, t);
  });
}

}  // namespace detail

/// True iff every minimum feedback vertex set of g misses a vertex of s or
/// leaves two vertices of t connected.
inline bool no_min_fvs_with(const Graph& g, const VertexSet& s, const VertexSet& t,
                            const OracleLimits& limits = {}) {
  g.require_subset(s, "label set S");
  g.require_subset(t, "label set T");
  return detail::blocks_all(g, enumerate_minimum_fvs(g, limits), s, t);
}

/// Inclusion-minimal (s*, t*) inside (s, t) that keeps the property of
/// no_min_fvs_with. Removes labels in ascending id order, S first; one pass
/// suffices because the property is monotone under adding labels.
inline std::pair<VertexSet, VertexSet> minimize_label_sets(const Graph& g, const VertexSet& s,
                                                           const VertexSet& t,
                                                           const OracleLimits& limits = {}) {
  g.require_subset(s, "label set S");
  g.require_subset(t, "label set T");
  const auto minimum = enumerate_minimum_fvs(g, limits);
  if (!detail::blocks_all(g, minimum, s, t))
    throw InputError("some minimum feedback vertex set contains S and separates T");
  VertexSet s_out = s, t_out = t;
  for (Vertex v : s) {
    VertexSet trial = s_out;
    trial.erase(v);
    if (detail::blocks_all(g, minimum, trial, t_out)) s_out = std::move(trial);
  }
  for (Vertex v : t) {
    VertexSet trial = t_out;
    trial.erase(v);
    if (detail::blocks_all(g, minimum, s_out, trial)) t_out = std::move(trial);
  }
  return {s_out, t_out};
}

namespace detail {

// Up to `quota` components of `terminal_comps` adjacent to `u` in `g`, lowest first.
inline void mark_adjacent(const Graph& g, Vertex u, const std::vector<VertexSet>& terminal_comps,
                          std::size_t quota, std::vector<char>& marked) {
  std::size_t taken = 0;
  for (std::size_t i = 0; i < terminal_comps.size() && taken < quota; ++i) {
    if (g.neighbors_in(u, terminal_comps[i]) == 0) continue;
    marked[i] = 1;
    ++taken;
  }
}

}  // namespace detail

/// Shrinks the labels inside the bag Y of `leaf` so that Y keeps at most
/// eta+1 S-labels and O(eta^2) T-labels, eta = height(ef). Labels outside Y
/// are unchanged.
inline std::pair<VertexSet, VertexSet> reduce_leaf_bag_labels(const Graph& g, const EliminationForest& ef,
                                                              int leaf, const VertexSet& s,
                                                              const VertexSet& t) {
  if (leaf < 0 || static_cast<std::size_t>(leaf) >= ef.node_count() || !ef.is_leaf(leaf))
    throw InputError("node " + std::to_string(leaf) + " is not a leaf of the elimination forest");
  if (auto report = validate_elimination_forest(g, ef, ef.height()); !report)
    throw InputError("invalid elimination forest: " + report.violations.front().detail);
  g.require_subset(s, "label set S");
  g.require_subset(t, "label set T");

  const auto eta = static_cast<std::size_t>(ef.height());
  const VertexSet& y = ef.bags[static_cast<std::size_t>(leaf)];
  const VertexSet s_y = set_intersection(s, y), t_y = set_intersection(t, y);

  VertexSet s_star = s_y;
  if (s_y.size() > eta + 1)
    s_star = VertexSet(std::vector<Vertex>(s_y.begin(), s_y.begin() + static_cast<std::ptrdiff_t>(eta + 1)));

  VertexSet t_star = t_y;
  if (t_y.size() > 2 * eta + 2) {
    const Graph tree = g.induced(y);
    const VertexSet cut = min_multiway_cut_on_tree(tree, t_y);
    if (cut.size() > eta) {
      t_star = VertexSet{};
      for (const TPath& p : pack_t_paths(tree, t_y, eta + 1)) {
        t_star.insert(p.source);
        t_star.insert(p.target);
      }
    } else {
      std::vector<VertexSet> terminal_comps;
      for (const VertexSet& c : connected_components(tree.without(cut)))
        if (c.intersects(t_y)) terminal_comps.push_back(c);
      std::vector<char> marked(terminal_comps.size(), 0);
      for (Vertex z : cut) detail::mark_adjacent(tree, z, terminal_comps, eta + 2, marked);
      for (Vertex u : ef.tail(leaf)) detail::mark_adjacent(g, u, terminal_comps, eta + 2, marked);
      t_star = set_intersection(cut, t_y);
      for (std::size_t i = 0; i < terminal_comps.size(); ++i)
        if (marked[i]) t_star = set_union(t_star, set_intersection(terminal_comps[i], t_y));
    }
  }
  return {set_union(set_difference(s, y), s_star), set_union(set_difference(t, y), t_star)};
}

// ---------------------------------------------------------------------------
// Kernel record:
//   delta <n>
//   rounds <r>
//   modulator <ids...>
//   vertices <ids...>
//   round <i> eta <e> gamma <g> tau <t> subsets <s> components <c> dropped <d> max_retained <m>
//   graph
//   <edge list>

inline void write_kernel_record(std::ostream& out, const KernelStep& step) {
  auto ids = [&](const VertexSet& s) {
    for (Vertex v : s) out << ' ' << v;
    out << '\n';
  };
  out << "delta " << step.delta << '\n';
  out << "rounds " << step.rounds.size() << '\n';
  out << "modulator";
  ids(step.modulator);
  out << "vertices";
  ids(step.reduced.vertices());
  for (std::size_t i = 0; i < step.rounds.size(); ++i) {
    const RoundStats& r = step.rounds[i];
    out << "round " << i << " eta " << r.eta << " gamma " << r.gamma << " tau " << r.tau << " subsets "
        << r.subsets << " components " << r.components << " dropped " << r.dropped << " max_retained "
        << r.max_retained << '\n';
  }
  out << "graph\n";
  io::write_edge_list(out, step.reduced);
}

}  // namespace fvsk
