#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fvsk/elim.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/reduction.hpp"

namespace fvsk::testing {

using Rng = std::mt19937_64;

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  Graph g(n);
  std::bernoulli_distribution edge(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

/// Random labelled tree by attaching each vertex to an earlier one.
inline Graph random_tree(Rng& rng, std::size_t n) {
  Graph t(n);
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    t.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(pick(rng)));
  }
  return t;
}

inline VertexSet random_subset(Rng& rng, const VertexSet& from, double p) {
  std::bernoulli_distribution take(p);
  std::vector<Vertex> out;
  for (Vertex v : from)
    if (take(rng)) out.push_back(v);
  return VertexSet(std::move(out));
}

/// Every labelled graph on exactly n vertices (n <= 6).
inline std::vector<Graph> all_graphs(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) slots.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
    out.push_back(std::move(g));
  }
  return out;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return g;
}

inline Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return g;
}

/// Disjoint union; ids of `b` are shifted by a.id_bound().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.id_bound() + b.id_bound());
  const auto shift = static_cast<Vertex>(a.id_bound());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  return g;
}

struct KernelInstance {
  Graph graph;
  VertexSet modulator;
};

/// Random graph on at most max_n vertices with a modulator X such that
/// ed(G - X) <= eta; X starts random and grows by random vertices until it fits.
inline KernelInstance random_kernel_instance(Rng& rng, std::size_t max_n, int eta) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  const double p = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
  KernelInstance inst{random_graph(rng, n, p), {}};
  inst.modulator = random_subset(rng, inst.graph.vertices(), 0.2);
  while (!elimination_distance_to_forest(inst.graph.without(inst.modulator), eta)) {
    auto rest = set_difference(inst.graph.vertices(), inst.modulator).members();
    inst.modulator.insert(rest[std::uniform_int_distribution<std::size_t>(0, rest.size() - 1)(rng)]);
  }
  return inst;
}

inline CnfFormula random_formula(Rng& rng, int max_vars, int max_clauses, int max_len) {
  CnfFormula f;
  f.variable_count = std::uniform_int_distribution<int>(1, max_vars)(rng);
  const int m = std::uniform_int_distribution<int>(0, max_clauses)(rng);
  for (int i = 0; i < m; ++i) {
    const int len = std::uniform_int_distribution<int>(1, max_len)(rng);
    std::vector<int> clause;
    for (int j = 0; j < len; ++j) {
      int var = std::uniform_int_distribution<int>(1, f.variable_count)(rng);
      clause.push_back(std::bernoulli_distribution(0.5)(rng) ? var : -var);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

/// Every clause over variables 1..2: non-empty sets of distinct literals.
inline std::vector<std::vector<int>> all_two_variable_clauses() {
  const int lits[] = {1, -1, 2, -2};
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < 16; ++mask) {
    std::vector<int> clause;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) clause.push_back(lits[i]);
    out.push_back(std::move(clause));
  }
  return out;
}

}  // namespace fvsk::testing
