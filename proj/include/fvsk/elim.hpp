#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"

namespace fvsk {

/// Rooted forest with bags witnessing elimination distance to a forest.
///
/// Node ids are indices into `parent`/`bags`; `parent[u] == -1` marks a root.
/// Non-leaf bags hold one vertex and leaf bags induce trees.
struct EliminationForest {
  std::vector<int> parent;
  std::vector<VertexSet> bags;

  std::size_t node_count() const { return parent.size(); }

  int add_node(int parent_node, VertexSet bag) {
    parent.push_back(parent_node);
    bags.push_back(std::move(bag));
    return static_cast<int>(parent.size() - 1);
  }

  std::vector<int> children(int u) const {
    std::vector<int> out;
    for (std::size_t c = 0; c < parent.size(); ++c)
      if (parent[c] == u) out.push_back(static_cast<int>(c));
    return out;
  }

  std::vector<int> roots() const { return children(-1); }

  bool is_leaf(int u) const {
    return std::find(parent.begin(), parent.end(), u) == parent.end();
  }

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (std::size_t u = 0; u < parent.size(); ++u)
      if (is_leaf(static_cast<int>(u))) out.push_back(static_cast<int>(u));
    return out;
  }

  /// Edges on the path from the root down to `u`.
  int depth(int u) const {
    int d = 0;
    for (int p = parent[static_cast<std::size_t>(u)]; p != -1; p = parent[static_cast<std::size_t>(p)]) ++d;
    return d;
  }

  /// Maximum number of edges on a root-to-leaf path; 0 for an empty forest.
  int height() const {
    int h = 0;
    for (std::size_t u = 0; u < parent.size(); ++u) h = std::max(h, depth(static_cast<int>(u)));
    return h;
  }

  bool is_ancestor(int a, int u) const {
    for (int p = u; p != -1; p = parent[static_cast<std::size_t>(p)])
      if (p == a) return true;
    return false;
  }

  /// Union of the bags of proper ancestors of `u`.
  VertexSet tail(int u) const {
    VertexSet out;
    for (int p = parent[static_cast<std::size_t>(u)]; p != -1; p = parent[static_cast<std::size_t>(p)])
      out = set_union(out, bags[static_cast<std::size_t>(p)]);
    return out;
  }

  VertexSet closed_tail(int u) const { return set_union(tail(u), bags[static_cast<std::size_t>(u)]); }

  /// Union of the bags in the subtree rooted at `u`, including `u` itself.
  VertexSet closed_tree(int u) const {
    VertexSet out;
    for (std::size_t c = 0; c < parent.size(); ++c)
      if (is_ancestor(u, static_cast<int>(c))) out = set_union(out, bags[c]);
    return out;
  }

  /// Node whose bag contains `v`, or -1.
  int node_of(Vertex v) const {
    for (std::size_t u = 0; u < bags.size(); ++u)
      if (bags[u].contains(v)) return static_cast<int>(u);
    return -1;
  }
};

enum class ForestViolation { kStructure, kPartition, kNonLeafBag, kLeafBag, kAncestry, kHeight };

inline const char* to_string(ForestViolation v) {
  switch (v) {
    case ForestViolation::kStructure: return "structure violated";
    case ForestViolation::kPartition: return "partition violated";
    case ForestViolation::kNonLeafBag: return "non-leaf bag violated";
    case ForestViolation::kLeafBag: return "leaf bag violated";
    case ForestViolation::kAncestry: return "ancestry violated";
    case ForestViolation::kHeight: return "height violated";
  }
  return "unknown";
}

struct ForestValidation {
  struct Item {
    ForestViolation kind;
    std::string detail;
  };
  std::vector<Item> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  bool has(ForestViolation kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Item& i) { return i.kind == kind; });
  }
};

/// Checks the four elimination-forest conditions and height <= eta.
inline ForestValidation validate_elimination_forest(const Graph& g, const EliminationForest& ef,
                                                    int eta) {
  ForestValidation report;
  auto fail = [&](ForestViolation kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  const std::size_t nodes = ef.node_count();
  if (ef.bags.size() != nodes) {
    fail(ForestViolation::kStructure, "bag count differs from node count");
    return report;
  }
  for (std::size_t u = 0; u < nodes; ++u) {
    int p = ef.parent[u];
    if (p < -1 || p >= static_cast<int>(nodes) || p == static_cast<int>(u)) {
      fail(ForestViolation::kStructure, "node " + std::to_string(u) + " has invalid parent");
      return report;
    }
  }
  for (std::size_t u = 0; u < nodes; ++u) {
    std::size_t steps = 0;
    for (int p = static_cast<int>(u); p != -1; p = ef.parent[static_cast<std::size_t>(p)]) {
      if (++steps > nodes) {
        fail(ForestViolation::kStructure, "parent pointers contain a cycle through node " + std::to_string(u));
        return report;
      }
    }
  }

  // Partition of V(G).
  std::map<Vertex, int> owner;
  for (std::size_t u = 0; u < nodes; ++u) {
    if (ef.bags[u].empty())
      fail(ForestViolation::kPartition, "node " + std::to_string(u) + " has an empty bag");
    for (Vertex v : ef.bags[u]) {
      if (!g.has_vertex(v)) {
        fail(ForestViolation::kPartition, "vertex " + std::to_string(v) + " is not in the graph");
        continue;
      }
      auto [it, fresh] = owner.emplace(v, static_cast<int>(u));
      if (!fresh)
        fail(ForestViolation::kPartition, "vertex " + std::to_string(v) + " in bags of nodes " +
                                              std::to_string(it->second) + " and " + std::to_string(u));
    }
  }
  for (Vertex v : g.vertices())
    if (!owner.count(v))
      fail(ForestViolation::kPartition, "vertex " + std::to_string(v) + " is in no bag");

  for (std::size_t u = 0; u < nodes; ++u) {
    const int node = static_cast<int>(u);
    if (!ef.is_leaf(node)) {
      if (ef.bags[u].size() != 1)
        fail(ForestViolation::kNonLeafBag, "non-leaf node " + std::to_string(u) + " has " +
                                               std::to_string(ef.bags[u].size()) + " vertices");
      continue;
    }
    VertexSet inside = set_intersection(ef.bags[u], g.vertices());
    Graph leaf = g.induced(inside);
    if (!is_connected(leaf) || !is_forest(leaf))
      fail(ForestViolation::kLeafBag, "leaf node " + std::to_string(u) + " does not induce a tree");
  }

  for (auto [a, b] : g.edges()) {
    auto ia = owner.find(a), ib = owner.find(b);
    if (ia == owner.end() || ib == owner.end()) continue;
    if (!ef.is_ancestor(ia->second, ib->second) && !ef.is_ancestor(ib->second, ia->second))
      fail(ForestViolation::kAncestry, "edge " + std::to_string(a) + "-" + std::to_string(b) +
                                           " joins unrelated nodes " + std::to_string(ia->second) +
                                           " and " + std::to_string(ib->second));
  }

  if (ef.height() > eta)
    fail(ForestViolation::kHeight,
         "height " + std::to_string(ef.height()) + " exceeds " + std::to_string(eta));
  return report;
}

namespace detail {

// Capped recursion over connected vertex sets. Memo entries are per call.
class EliminationSearch {
 public:
  explicit EliminationSearch(const Graph& g) : g_(g) {}

  /// ed of the connected set `c` if <= limit, else limit + 1.
  int solve(const VertexSet& c, int limit) {
    Graph sub = g_.induced(c);
    if (is_forest(sub)) return 0;
    if (limit <= 0) return 1;
    Entry& entry = memo_[c];
    if (entry.exact) return std::min(*entry.exact, limit + 1);
    if (entry.lower_bound > limit) return limit + 1;

    int best = limit + 1;
    Vertex best_vertex = -1;
    for (Vertex v : c) {
      const int budget = best - 2;  // children must reach ed <= best - 2 to improve
      if (budget < 0) break;
      int worst = 0;
      for (const VertexSet& d : connected_components(sub.without(VertexSet{v}))) {
        worst = std::max(worst, solve(d, budget));
        if (worst > budget) break;
      }
      if (worst <= budget) {
        best = worst + 1;
        best_vertex = v;
        if (best == 1) break;
      }
    }
    if (best <= limit) {
      entry.exact = best;
      entry.split = best_vertex;
    } else {
      entry.lower_bound = std::max(entry.lower_bound, limit + 1);
    }
    return best;
  }

  /// Deletion vertex chosen for `c` by a successful `solve`.
  Vertex split_vertex(const VertexSet& c) const { return memo_.at(c).split; }

 private:
  struct Entry {
    std::optional<int> exact;
    int lower_bound = 0;
    Vertex split = -1;
  };

  const Graph& g_;
  std::map<VertexSet, Entry> memo_;
};

}  // namespace detail

/// Elimination distance of `g` to a forest when it is at most `cap`.
inline std::optional<int> elimination_distance_to_forest(const Graph& g, int cap) {
  detail::EliminationSearch search(g);
  int result = 0;
  for (const VertexSet& c : connected_components(g)) {
    int value = search.solve(c, cap);
    if (value > cap) return std::nullopt;
    result = std::max(result, value);
  }
  return result;
}

/// An elimination forest of height <= eta, or nullopt if ed(g) > eta.
/// Deletion vertices are the lowest ids achieving the minimum.
inline std::optional<EliminationForest> compute_elimination_forest(const Graph& g, int eta) {
  detail::EliminationSearch search(g);
  EliminationForest ef;
  struct Pending {
    VertexSet set;
    int parent;
  };
  std::vector<Pending> work;
  for (const VertexSet& c : connected_components(g)) {
    if (search.solve(c, eta) > eta) return std::nullopt;
    work.push_back({c, -1});
  }
  // Process in FIFO order so node ids follow a breadth-first layout.
  for (std::size_t head = 0; head < work.size(); ++head) {
    Pending item = work[head];
    Graph sub = g.induced(item.set);
    if (is_forest(sub)) {
      ef.add_node(item.parent, item.set);
      continue;
    }
    Vertex v = search.split_vertex(item.set);
    int node = ef.add_node(item.parent, VertexSet{v});
    for (const VertexSet& d : connected_components(sub.without(VertexSet{v})))
      work.push_back({d, node});
  }
  return ef;
}

// Serialization, one line per node ordered by id:
//   node <id> parent <id|-> bag v1,v2,...

inline void write_elimination_forest(std::ostream& out, const EliminationForest& ef) {
  for (std::size_t u = 0; u < ef.node_count(); ++u) {
    out << "node " << u << " parent ";
    if (ef.parent[u] < 0) out << '-'; else out << ef.parent[u];
    out << " bag ";
    bool first = true;
    for (Vertex v : ef.bags[u]) {
      if (!first) out << ',';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

inline EliminationForest read_elimination_forest(std::istream& in) {
  EliminationForest ef;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    std::string kw_node, kw_parent, parent_text, kw_bag, bag_text;
    long long id = -1;
    if (!(ls >> kw_node >> id >> kw_parent >> parent_text >> kw_bag) || kw_node != "node" ||
        kw_parent != "parent" || kw_bag != "bag")
      throw ParseError(line_no, "expected 'node <id> parent <id|-> bag v1,v2,...'");
    ls >> bag_text;
    if (id != static_cast<long long>(ef.node_count()))
      throw ParseError(line_no, "node ids must be consecutive from 0");
    int parent = -1;
    if (parent_text != "-") {
      try {
        parent = std::stoi(parent_text);
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "invalid parent '" + parent_text + "'");
      }
      if (parent < 0) throw ParseError(line_no, "invalid parent '" + parent_text + "'");
    }
    std::vector<Vertex> bag;
    std::istringstream bs(bag_text);
    std::string item;
    while (std::getline(bs, item, ',')) {
      if (item.empty()) continue;
      try {
        bag.push_back(std::stoi(item));
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "invalid bag vertex '" + item + "'");
      }
    }
    ef.add_node(parent, VertexSet(std::move(bag)));
  }
  return ef;
}

}  // namespace fvsk
