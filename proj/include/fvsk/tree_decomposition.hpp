#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fvsk/elim.hpp"
#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"

namespace fvsk {

/// Rooted tree decomposition. `parent[root] == -1` for exactly one node.
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<VertexSet> bags;

  std::size_t node_count() const { return parent.size(); }

  int add_node(int parent_node, VertexSet bag) {
    parent.push_back(parent_node);
    bags.push_back(std::move(bag));
    return static_cast<int>(parent.size() - 1);
  }

  int root() const {
    auto it = std::find(parent.begin(), parent.end(), -1);
    return it == parent.end() ? -1 : static_cast<int>(it - parent.begin());
  }

  /// Max bag size minus one; -1 when every bag is empty.
  int width() const {
    std::size_t w = 0;
    for (const VertexSet& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
};

/// Empty string when `td` is a valid tree decomposition of `g`, otherwise a
/// description of the first violated condition.
inline std::string tree_decomposition_error(const Graph& g, const TreeDecomposition& td) {
  const std::size_t nodes = td.node_count();
  if (nodes == 0) return "decomposition has no nodes";
  if (td.bags.size() != nodes) return "bag count differs from node count";
  int roots = 0;
  for (std::size_t u = 0; u < nodes; ++u) {
    int p = td.parent[u];
    if (p == -1) ++roots;
    else if (p < 0 || p >= static_cast<int>(nodes) || p == static_cast<int>(u))
      return "node " + std::to_string(u) + " has invalid parent";
  }
  if (roots != 1) return "decomposition must have exactly one root";
  for (std::size_t u = 0; u < nodes; ++u) {
    std::size_t steps = 0;
    for (int p = static_cast<int>(u); p != -1; p = td.parent[static_cast<std::size_t>(p)])
      if (++steps > nodes) return "parent pointers contain a cycle";
  }
  for (const VertexSet& b : td.bags)
    for (Vertex v : b)
      if (!g.has_vertex(v)) return "bag holds " + std::to_string(v) + ", which is not a vertex";

  std::vector<std::vector<int>> holders(g.id_bound());
  for (std::size_t u = 0; u < nodes; ++u)
    for (Vertex v : td.bags[u]) holders[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));

  for (Vertex v : g.vertices()) {
    const auto& h = holders[static_cast<std::size_t>(v)];
    if (h.empty()) return "vertex " + std::to_string(v) + " is in no bag";
    // Nodes holding v induce a subtree iff exactly one of them has a parent
    // that does not hold v.
    int tops = 0;
    for (int u : h) {
      int p = td.parent[static_cast<std::size_t>(u)];
      if (p == -1 || !td.bags[static_cast<std::size_t>(p)].contains(v)) ++tops;
    }
    if (tops != 1) return "nodes holding vertex " + std::to_string(v) + " are not connected";
  }
  for (auto [a, b] : g.edges()) {
    const auto& h = holders[static_cast<std::size_t>(a)];
    bool covered = std::any_of(h.begin(), h.end(), [&](int u) {
      return td.bags[static_cast<std::size_t>(u)].contains(b);
    });
    if (!covered) return "edge " + std::to_string(a) + "-" + std::to_string(b) + " is in no bag";
  }
  return {};
}

inline bool validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  return tree_decomposition_error(g, td).empty();
}

/// Decomposition of width <= height(ef) + 1.
///
/// Each leaf bag (a tree) gets its width-1 decomposition with tail(leaf)
/// added to every bag; internal nodes contribute their closed tails. An
/// empty root bag joins the trees of the forest.
inline TreeDecomposition tree_decomposition_from_elimination_forest(const Graph& g,
                                                                   const EliminationForest& ef) {
  if (auto report = validate_elimination_forest(g, ef, static_cast<int>(ef.node_count())); !report)
    throw InputError("invalid elimination forest: " + report.violations.front().detail);

  TreeDecomposition td;
  const int root = td.add_node(-1, {});
  std::vector<int> td_node(ef.node_count(), -1);

  // Parents precede children in a breadth-first order over the forest.
  std::vector<int> order = ef.roots();
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : ef.children(order[i])) order.push_back(c);

  for (int u : order) {
    const int ef_parent = ef.parent[static_cast<std::size_t>(u)];
    const int attach = ef_parent == -1 ? root : td_node[static_cast<std::size_t>(ef_parent)];
    if (!ef.is_leaf(u)) {
      td_node[static_cast<std::size_t>(u)] = td.add_node(attach, ef.closed_tail(u));
      continue;
    }
    const VertexSet tail = ef.tail(u);
    const VertexSet& bag = ef.bags[static_cast<std::size_t>(u)];
    Graph tree = g.induced(bag);
    // BFS from the smallest vertex; each vertex w gets bag {w, parent(w)} + tail.
    std::vector<int> node_of(g.id_bound(), -1);
    std::vector<Vertex> queue{bag.front()};
    std::vector<Vertex> tree_parent(g.id_bound(), -1);
    node_of[static_cast<std::size_t>(bag.front())] =
        td.add_node(attach, set_union(tail, VertexSet{bag.front()}));
    td_node[static_cast<std::size_t>(u)] = node_of[static_cast<std::size_t>(bag.front())];
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex w = queue[head];
      for (Vertex x : tree.neighbors(w)) {
        if (x == tree_parent[static_cast<std::size_t>(w)]) continue;
        tree_parent[static_cast<std::size_t>(x)] = w;
        node_of[static_cast<std::size_t>(x)] =
            td.add_node(node_of[static_cast<std::size_t>(w)], set_union(tail, VertexSet{w, x}));
        queue.push_back(x);
      }
    }
  }
  return td;
}

enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
  NiceKind kind = NiceKind::kLeaf;
  Vertex vertex = -1;            // introduced or forgotten vertex
  std::vector<Vertex> bag;       // sorted
  std::vector<int> children;     // indices smaller than this node's index
};

/// Nice form: empty leaves, one-vertex introduce/forget steps, binary joins
/// with identical bags, and an empty root. Nodes are stored in post-order, so
/// the root is the last node.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  int width() const {
    std::size_t w = 0;
    for (const NiceNode& n : nodes) w = std::max(w, n.bag.size());
    return static_cast<int>(w) - 1;
  }
};

inline NiceDecomposition make_nice(const TreeDecomposition& td) {
  NiceDecomposition nice;
  auto push = [&](NiceKind kind, Vertex v, std::vector<Vertex> bag, std::vector<int> children) {
    nice.nodes.push_back({kind, v, std::move(bag), std::move(children)});
    return static_cast<int>(nice.nodes.size() - 1);
  };
  // Moves from node `from` (bag `have`) to a node whose bag is `want`.
  auto morph = [&](int from, std::vector<Vertex> have, const VertexSet& want) {
    for (Vertex v : std::vector<Vertex>(have)) {
      if (want.contains(v)) continue;
      have.erase(std::find(have.begin(), have.end(), v));
      from = push(NiceKind::kForget, v, have, {from});
    }
    for (Vertex v : want) {
      if (std::binary_search(have.begin(), have.end(), v)) continue;
      have.insert(std::lower_bound(have.begin(), have.end(), v), v);
      from = push(NiceKind::kIntroduce, v, have, {from});
    }
    return from;
  };

  std::vector<std::vector<int>> children(td.node_count());
  for (std::size_t u = 0; u < td.node_count(); ++u)
    if (td.parent[u] >= 0) children[static_cast<std::size_t>(td.parent[u])].push_back(static_cast<int>(u));

  // Iterative post-order over the decomposition tree.
  std::vector<int> built(td.node_count(), -1);
  std::vector<std::pair<int, bool>> stack{{td.root(), false}};
  while (!stack.empty()) {
    auto [u, expanded] = stack.back();
    stack.pop_back();
    const auto ui = static_cast<std::size_t>(u);
    if (!expanded) {
      stack.emplace_back(u, true);
      for (int c : children[ui]) stack.emplace_back(c, false);
      continue;
    }
    const VertexSet& bag = td.bags[ui];
    std::vector<int> parts;
    for (int c : children[ui])
      parts.push_back(morph(built[static_cast<std::size_t>(c)],
                            td.bags[static_cast<std::size_t>(c)].members(), bag));
    if (parts.empty()) parts.push_back(morph(push(NiceKind::kLeaf, -1, {}, {}), {}, bag));
    int joined = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
      joined = push(NiceKind::kJoin, -1, bag.members(), {joined, parts[i]});
    built[ui] = joined;
  }
  morph(built[static_cast<std::size_t>(td.root())], td.bags[static_cast<std::size_t>(td.root())].members(),
        VertexSet{});
  return nice;
}

}  // namespace fvsk
