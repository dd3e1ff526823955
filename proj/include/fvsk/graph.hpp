#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/vertex_set.hpp"

namespace fvsk {

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph over integer vertex ids.
///
/// Ids are dense at construction. Induced subgraphs keep the ids of the
/// parent graph, so `id_bound()` may exceed `vertex_count()`; absent ids have
/// no adjacency and `has_vertex()` is false for them.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : present_(n, 1), adj_(n), vertex_count_(n) {}

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  Vertex add_vertex() {
    present_.push_back(1);
    adj_.emplace_back();
    ++vertex_count_;
    return static_cast<Vertex>(present_.size() - 1);
  }

  /// Adds `v` if absent, growing the id range as needed.
  void ensure_vertex(Vertex v) {
    if (v < 0) throw InputError("negative vertex id");
    if (static_cast<std::size_t>(v) >= present_.size()) {
      present_.resize(static_cast<std::size_t>(v) + 1, 0);
      adj_.resize(present_.size());
    }
    if (!present_[static_cast<std::size_t>(v)]) {
      present_[static_cast<std::size_t>(v)] = 1;
      ++vertex_count_;
    }
  }

  /// Returns false when the edge already exists. Self-loops are rejected.
  bool add_edge(Vertex u, Vertex v) {
    require_vertex(u);
    require_vertex(v);
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return false;
    nu.insert(it, v);
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++edge_count_;
    return true;
  }

  bool remove_edge(Vertex u, Vertex v) {
    if (!has_edge(u, v)) return false;
    auto& nu = adj_[static_cast<std::size_t>(u)];
    nu.erase(std::lower_bound(nu.begin(), nu.end(), v));
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --edge_count_;
    return true;
  }

  void remove_vertex(Vertex v) {
    require_vertex(v);
    for (Vertex w : std::vector<Vertex>(neighbors(v))) remove_edge(v, w);
    present_[static_cast<std::size_t>(v)] = 0;
    --vertex_count_;
  }

  bool has_vertex(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < present_.size() &&
           present_[static_cast<std::size_t>(v)];
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (!has_vertex(u) || !has_vertex(v)) return false;
    const auto& nu = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    require_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t id_bound() const noexcept { return present_.size(); }
  bool empty() const noexcept { return vertex_count_ == 0; }

  VertexSet vertices() const {
    std::vector<Vertex> out;
    out.reserve(vertex_count_);
    for (std::size_t v = 0; v < present_.size(); ++v)
      if (present_[v]) out.push_back(static_cast<Vertex>(v));
    return VertexSet(std::move(out));
  }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
    return out;
  }

  /// Number of neighbors of `v` inside `s`.
  std::size_t neighbors_in(Vertex v, const VertexSet& s) const {
    std::size_t count = 0;
    for (Vertex w : neighbors(v))
      if (s.contains(w)) ++count;
    return count;
  }

  /// G[keep]; ids are preserved. Ids in `keep` that are not vertices of this
  /// graph are an input error.
  Graph induced(const VertexSet& keep) const {
    Graph h;
    h.present_.assign(present_.size(), 0);
    h.adj_.resize(present_.size());
    for (Vertex v : keep) {
      require_vertex(v);
      h.present_[static_cast<std::size_t>(v)] = 1;
    }
    h.vertex_count_ = keep.size();
    for (Vertex v : keep) {
      auto& out = h.adj_[static_cast<std::size_t>(v)];
      for (Vertex w : adj_[static_cast<std::size_t>(v)])
        if (keep.contains(w)) out.push_back(w);
      h.edge_count_ += out.size();
    }
    h.edge_count_ /= 2;
    return h;
  }

  /// G - drop. Ids of `drop` need not be vertices.
  Graph without(const VertexSet& drop) const {
    return induced(set_difference(vertices(), drop));
  }

  void require_vertex(Vertex v) const {
    if (!has_vertex(v)) throw InputError("vertex " + std::to_string(v) + " is not in the graph");
  }

  void require_subset(const VertexSet& s, const char* what) const {
    for (Vertex v : s)
      if (!has_vertex(v))
        throw InputError(std::string(what) + " contains " + std::to_string(v) +
                         ", which is not a vertex of the graph");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices() == b.vertices() && a.edges() == b.edges();
  }

 private:
  std::vector<char> present_;
  std::vector<std::vector<Vertex>> adj_;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
};

/// Components ordered by their smallest vertex id.
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<char> seen(g.id_bound(), 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s : g.vertices()) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Vertex> comp;
    seen[static_cast<std::size_t>(s)] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Some simple cycle of `g`, as its vertex sequence (the closing edge runs from
/// the last vertex back to the first), or nullopt when `g` is a forest.
inline std::optional<std::vector<Vertex>> find_cycle(const Graph& g) {
  const std::size_t n = g.id_bound();
  std::vector<Vertex> parent(n, -1);
  std::vector<int> depth(n, -1);
  for (Vertex root : g.vertices()) {
    if (depth[static_cast<std::size_t>(root)] >= 0) continue;
    depth[static_cast<std::size_t>(root)] = 0;
    // Iterative DFS; each frame remembers the next neighbor index to visit.
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      const auto& nbrs = g.neighbors(v);
      if (idx == nbrs.size()) {
        stack.pop_back();
        continue;
      }
      Vertex w = nbrs[idx++];
      if (w == parent[static_cast<std::size_t>(v)]) continue;
      if (depth[static_cast<std::size_t>(w)] >= 0) {
        if (depth[static_cast<std::size_t>(w)] > depth[static_cast<std::size_t>(v)]) continue;
        std::vector<Vertex> cycle;
        for (Vertex u = v; u != w; u = parent[static_cast<std::size_t>(u)]) cycle.push_back(u);
        cycle.push_back(w);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      parent[static_cast<std::size_t>(w)] = v;
      depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
      stack.emplace_back(w, 0);
    }
  }
  return std::nullopt;
}

inline bool is_forest(const Graph& g) {
  return g.edge_count() + connected_components(g).size() == g.vertex_count();
}

inline bool is_tree(const Graph& g) {
  return !g.empty() && g.edge_count() + 1 == g.vertex_count() && is_connected(g);
}

inline bool is_feedback_vertex_set(const Graph& g, const VertexSet& x) {
  g.require_subset(x, "feedback vertex set candidate");
  return is_forest(g.without(x));
}

/// True iff every component of g - cut holds at most one vertex of
/// `terminals`. Terminals inside the cut count as separated.
inline bool separates(const Graph& g, const VertexSet& cut, const VertexSet& terminals) {
  for (const VertexSet& comp : connected_components(g.without(cut)))
    if (set_intersection(comp, terminals).size() > 1) return false;
  return true;
}

/// Vertex sets of the biconnected components (blocks). Bridges appear as
/// 2-vertex blocks and isolated vertices as 1-vertex blocks. Sorted.
inline std::vector<VertexSet> biconnected_components(const Graph& g) {
  const std::size_t n = g.id_bound();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Vertex> parent(n, -1);
  std::vector<Edge> edge_stack;
  std::vector<VertexSet> blocks;
  int timer = 0;

  for (Vertex root : g.vertices()) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    if (g.degree(root) == 0) {
      blocks.push_back(VertexSet{root});
      disc[static_cast<std::size_t>(root)] = timer++;
      continue;
    }
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      const auto& nbrs = g.neighbors(v);
      if (idx < nbrs.size()) {
        Vertex w = nbrs[idx++];
        auto vi = static_cast<std::size_t>(v), wi = static_cast<std::size_t>(w);
        if (disc[wi] < 0) {
          parent[wi] = v;
          disc[wi] = low[wi] = timer++;
          edge_stack.emplace_back(v, w);
          stack.emplace_back(w, 0);
        } else if (w != parent[vi] && disc[wi] < disc[vi]) {
          edge_stack.emplace_back(v, w);
          low[vi] = std::min(low[vi], disc[wi]);
        }
        continue;
      }
      Vertex child = v;
      stack.pop_back();
      if (stack.empty()) break;
      Vertex p = stack.back().first;
      auto ci = static_cast<std::size_t>(child), pi = static_cast<std::size_t>(p);
      low[pi] = std::min(low[pi], low[ci]);
      if (low[ci] >= disc[pi]) {
        std::vector<Vertex> block;
        while (true) {
          Edge e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e.first);
          block.push_back(e.second);
          if (e == Edge{p, child}) break;
        }
        blocks.emplace_back(std::move(block));
      }
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

/// The unique path between `a` and `b` in the forest `g`, or empty if they
/// are disconnected.
inline std::vector<Vertex> forest_path(const Graph& g, Vertex a, Vertex b) {
  std::vector<Vertex> parent(g.id_bound(), -1);
  std::vector<char> seen(g.id_bound(), 0);
  std::vector<Vertex> queue{a};
  seen[static_cast<std::size_t>(a)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    if (v == b) break;
    for (Vertex w : g.neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      parent[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (!seen[static_cast<std::size_t>(b)]) return {};
  std::vector<Vertex> path;
  for (Vertex v = b; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace fvsk
