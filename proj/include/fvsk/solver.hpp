#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fvsk/elim.hpp"
#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/tree_decomposition.hpp"

namespace fvsk {

/// Side conditions on a feedback vertex set: every vertex of `require` is in
/// the solution, and no component of the remainder holds two vertices of
/// `separate`. A terminal inside the solution counts as separated.
struct FvsConstraint {
  VertexSet require;
  VertexSet separate;
};

namespace detail {

// DP over a nice tree decomposition. A state assigns each bag position a
// 4-bit label: kDeleted, or the id of its class in the forest built so far.
// Class ids are canonical (numbered by first position). `flags` has bit i set
// when class i already contains a forgotten terminal.
class FvsDp {
 public:
  static constexpr unsigned kDeleted = 0xF;
  static constexpr std::size_t kMaxBag = 15;

  FvsDp(const Graph& g, const FvsConstraint& c) : g_(g), c_(c) {}

  int solve(const NiceDecomposition& nice) {
    std::vector<Table> tables(nice.nodes.size());
    for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
      const NiceNode& node = nice.nodes[i];
      if (node.bag.size() > kMaxBag) throw InputError("decomposition bag too large for the solver");
      switch (node.kind) {
        case NiceKind::kLeaf: tables[i][Key{}] = 0; break;
        case NiceKind::kIntroduce: tables[i] = introduce(node, tables[child(node, 0)]); break;
        case NiceKind::kForget: tables[i] = forget(node, nice.nodes[child(node, 0)], tables[child(node, 0)]); break;
        case NiceKind::kJoin: tables[i] = join(node, tables[child(node, 0)], tables[child(node, 1)]); break;
      }
      for (int c : node.children) Table().swap(tables[static_cast<std::size_t>(c)]);
    }
    const Table& root = tables.back();
    if (root.empty()) throw InputError("constraint admits no solution");
    int best = root.begin()->second;
    for (const auto& [key, cost] : root) best = std::min(best, cost);
    return best;
  }

 private:
  struct Key {
    std::uint64_t labels = 0;
    std::uint32_t flags = 0;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::uint64_t>()(k.labels * 0x9E3779B97F4A7C15ULL ^ k.flags);
    }
  };
  using Table = std::unordered_map<Key, int, KeyHash>;

  static std::size_t child(const NiceNode& n, std::size_t i) {
    return static_cast<std::size_t>(n.children[i]);
  }
  static unsigned get(std::uint64_t labels, std::size_t pos) {
    return static_cast<unsigned>(labels >> (4 * pos)) & 0xF;
  }
  static std::uint64_t set(std::uint64_t labels, std::size_t pos, unsigned value) {
    labels &= ~(std::uint64_t{0xF} << (4 * pos));
    return labels | (std::uint64_t{value} << (4 * pos));
  }
  static std::uint64_t insert_at(std::uint64_t labels, std::size_t pos, unsigned value) {
    const std::uint64_t low_mask = pos == 0 ? 0 : (std::uint64_t{1} << (4 * pos)) - 1;
    const std::uint64_t high = pos >= 16 ? 0 : (labels & ~low_mask) << 4;
    return (labels & low_mask) | high | (std::uint64_t{value} << (4 * pos));
  }
  static std::uint64_t erase_at(std::uint64_t labels, std::size_t pos) {
    const std::uint64_t low_mask = pos == 0 ? 0 : (std::uint64_t{1} << (4 * pos)) - 1;
    return (labels & low_mask) | ((labels >> 4) & ~low_mask);
  }

  // Renumbers classes by first position and drops flags of vanished classes.
  static Key canonical(std::uint64_t labels, std::uint32_t flags, std::size_t size) {
    std::array<unsigned, 16> remap;
    remap.fill(kDeleted);
    unsigned next = 0;
    Key out;
    for (std::size_t p = 0; p < size; ++p) {
      unsigned l = get(labels, p);
      if (l == kDeleted) {
        out.labels = set(out.labels, p, kDeleted);
        continue;
      }
      if (remap[l] == kDeleted) {
        remap[l] = next++;
        if (flags >> l & 1) out.flags |= 1u << remap[l];
      }
      out.labels = set(out.labels, p, remap[l]);
    }
    return out;
  }

  bool is_terminal(Vertex v) const { return c_.separate.contains(v); }

  // Every class holds at most one terminal, counting its forgotten one.
  bool terminals_ok(const Key& k, const std::vector<Vertex>& bag) const {
    std::uint32_t seen = k.flags;
    for (std::size_t p = 0; p < bag.size(); ++p) {
      unsigned l = get(k.labels, p);
      if (l == kDeleted || !is_terminal(bag[p])) continue;
      if (seen >> l & 1) return false;
      seen |= 1u << l;
    }
    return true;
  }

  static void relax(Table& t, const Key& k, int cost) {
    auto [it, fresh] = t.emplace(k, cost);
    if (!fresh && cost < it->second) it->second = cost;
  }

  Table introduce(const NiceNode& node, const Table& below) const {
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
    const bool forced = c_.require.contains(node.vertex);
    Table out;
    for (const auto& [k, cost] : below) {
      relax(out, Key{insert_at(k.labels, pos, kDeleted), k.flags}, cost + 1);
      if (forced) continue;
      // Classes below use ids <= 13, so 14 is fresh.
      Key kept = canonical(insert_at(k.labels, pos, 14), k.flags, node.bag.size());
      relax(out, kept, cost);
    }
    return out;
  }

  Table forget(const NiceNode& node, const NiceNode& below_node, const Table& below) const {
    const std::vector<Vertex>& bag = below_node.bag;
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(bag.begin(), bag.end(), node.vertex) - bag.begin());
    std::vector<std::size_t> nbr_pos;
    for (std::size_t p = 0; p < bag.size(); ++p)
      if (p != pos && g_.has_edge(node.vertex, bag[p])) nbr_pos.push_back(p);
    const bool terminal = is_terminal(node.vertex);

    Table out;
    for (const auto& [k0, cost] : below) {
      Key k = k0;
      const unsigned lv = get(k.labels, pos);
      bool ok = true;
      if (lv != kDeleted) {
        // Edges are added when their first endpoint is forgotten.
        for (std::size_t p : nbr_pos) {
          unsigned a = get(k.labels, pos), b = get(k.labels, p);
          if (b == kDeleted) continue;
          if (a == b) { ok = false; break; }
          for (std::size_t q = 0; q < bag.size(); ++q)
            if (get(k.labels, q) == b) k.labels = set(k.labels, q, a);
          if (k.flags >> b & 1) {
            if (k.flags >> a & 1) { ok = false; break; }
            k.flags = (k.flags & ~(1u << b)) | (1u << a);
          }
        }
        if (ok && !terminals_ok(k, bag)) ok = false;
      }
      if (!ok) continue;
      const unsigned l = get(k.labels, pos);
      if (l != kDeleted && terminal) k.flags |= 1u << l;
      relax(out, canonical(erase_at(k.labels, pos), k.flags, node.bag.size()), cost);
    }
    return out;
  }

  Table join(const NiceNode& node, const Table& left, const Table& right) const {
    const std::size_t size = node.bag.size();
    auto deleted_mask = [&](const Key& k) {
      std::uint32_t m = 0;
      for (std::size_t p = 0; p < size; ++p)
        if (get(k.labels, p) == kDeleted) m |= 1u << p;
      return m;
    };
    std::unordered_map<std::uint32_t, std::vector<std::pair<Key, int>>> by_mask;
    for (const auto& entry : right) by_mask[deleted_mask(entry.first)].push_back(entry);

    Table out;
    for (const auto& [lk, lcost] : left) {
      const std::uint32_t mask = deleted_mask(lk);
      auto it = by_mask.find(mask);
      if (it == by_mask.end()) continue;
      const int removed = std::popcount(mask);
      for (const auto& [rk, rcost] : it->second) {
        std::array<int, 16> parent;
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
          while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
          return x;
        };
        // Union-find over positions, seeded with the left partition.
        std::array<int, 16> first_left, first_right;
        first_left.fill(-1);
        first_right.fill(-1);
        bool ok = true;
        for (std::size_t p = 0; p < size && ok; ++p) {
          unsigned l = get(lk.labels, p);
          if (l == kDeleted) continue;
          if (first_left[l] < 0) first_left[l] = static_cast<int>(p);
          else parent[p] = first_left[l];
        }
        for (std::size_t p = 0; p < size && ok; ++p) {
          unsigned r = get(rk.labels, p);
          if (r == kDeleted) continue;
          if (first_right[r] < 0) { first_right[r] = static_cast<int>(p); continue; }
          int a = find(first_right[r]), b = find(static_cast<int>(p));
          if (a == b) ok = false;  // already connected on the left: cycle
          else parent[static_cast<std::size_t>(b)] = a;
        }
        if (!ok) continue;
        Key merged;
        std::array<unsigned, 16> flag_count{};
        for (std::size_t p = 0; p < size; ++p) {
          unsigned l = get(lk.labels, p);
          if (l == kDeleted) { merged.labels = set(merged.labels, p, kDeleted); continue; }
          merged.labels = set(merged.labels, p, static_cast<unsigned>(find(static_cast<int>(p))));
        }
        for (unsigned cls = 0; cls < 16 && ok; ++cls) {
          if (first_left[cls] >= 0 && (lk.flags >> cls & 1))
            ++flag_count[static_cast<std::size_t>(find(first_left[cls]))];
          if (first_right[cls] >= 0 && (rk.flags >> cls & 1))
            ++flag_count[static_cast<std::size_t>(find(first_right[cls]))];
        }
        for (std::size_t root = 0; root < 16; ++root) {
          if (flag_count[root] > 1) ok = false;
          else if (flag_count[root] == 1) merged.flags |= 1u << root;
        }
        if (!ok) continue;
        Key k = canonical(merged.labels, merged.flags, size);
        if (!terminals_ok(k, node.bag)) continue;
        relax(out, k, lcost + rcost - removed);
      }
    }
    return out;
  }

  const Graph& g_;
  const FvsConstraint& c_;
};

inline void require_valid_decomposition(const Graph& g, const TreeDecomposition& td) {
  if (std::string error = tree_decomposition_error(g, td); !error.empty())
    throw InputError("invalid tree decomposition: " + error);
}

}  // namespace detail

/// Minimum size of a feedback vertex set satisfying `c`.
inline int constrained_fvs_size(const Graph& g, const TreeDecomposition& td, const FvsConstraint& c) {
  detail::require_valid_decomposition(g, td);
  g.require_subset(c.require, "required set");
  g.require_subset(c.separate, "terminal set");
  detail::FvsDp dp(g, c);
  return dp.solve(make_nice(td));
}

inline int fvs_size(const Graph& g, const TreeDecomposition& td) {
  return constrained_fvs_size(g, td, {});
}

/// True iff some minimum feedback vertex set contains c.require and
/// separates c.separate.
inline bool exists_min_fvs_with(const Graph& g, const TreeDecomposition& td, const FvsConstraint& c) {
  return constrained_fvs_size(g, td, c) == fvs_size(g, td);
}

/// Decomposition built from a minimum-height elimination forest.
inline TreeDecomposition decomposition_for(const Graph& g) {
  for (int eta = 0;; ++eta)
    if (auto ef = compute_elimination_forest(g, eta))
      return tree_decomposition_from_elimination_forest(g, *ef);
}

inline int fvs_size(const Graph& g) { return fvs_size(g, decomposition_for(g)); }

inline bool exists_min_fvs_with(const Graph& g, const FvsConstraint& c) {
  return exists_min_fvs_with(g, decomposition_for(g), c);
}

/// Oracle twin of exists_min_fvs_with over enumerate_minimum_fvs.
inline bool brute_exists_min_fvs_with(const Graph& g, const FvsConstraint& c,
                                      const OracleLimits& limits = {}) {
  g.require_subset(c.require, "required set");
  g.require_subset(c.separate, "terminal set");
  for (const VertexSet& x : enumerate_minimum_fvs(g, limits))
    if (c.require.is_subset_of(x) && separates(g, x, c.separate)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Vertex multiway cut on trees and packings of T-paths.

/// Path whose endpoints are two distinct terminals.
struct TPath {
  Vertex source = -1;
  Vertex target = -1;
  std::vector<Vertex> vertices;  // source first, target last
};

namespace detail {

inline void require_tree(const Graph& t, const VertexSet& terminals) {
  if (!t.empty() && !is_tree(t)) throw InputError("graph is not a tree");
  t.require_subset(terminals, "terminal set");
}

// Parent pointers and a BFS order of `t` rooted at its lowest id.
struct RootedTree {
  std::vector<Vertex> parent;
  std::vector<Vertex> order;

  explicit RootedTree(const Graph& t) : parent(t.id_bound(), -1) {
    if (t.empty()) return;
    order.push_back(t.vertices().front());
    for (std::size_t head = 0; head < order.size(); ++head)
      for (Vertex w : t.neighbors(order[head]))
        if (w != parent[static_cast<std::size_t>(order[head])]) {
          parent[static_cast<std::size_t>(w)] = order[head];
          order.push_back(w);
        }
  }

  bool in_subtree(Vertex v, Vertex top) const {
    for (; v != -1; v = parent[static_cast<std::size_t>(v)])
      if (v == top) return true;
    return false;
  }
};

}  // namespace detail

/// Raises cut vertices to their parents while the cut still separates.
inline VertexSet normalize_cut_upwards(const Graph& t, const VertexSet& terminals, VertexSet cut) {
  detail::RootedTree rooted(t);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex u : cut.members()) {
      Vertex w = rooted.parent[static_cast<std::size_t>(u)];
      if (w == -1 || cut.contains(w)) continue;
      VertexSet raised = cut;
      raised.erase(u);
      raised.insert(w);
      if (separates(t, raised, terminals)) {
        cut = std::move(raised);
        changed = true;
        break;
      }
    }
  }
  return cut;
}

/// Minimum vertex multiway cut of `terminals` in the tree `t`, rooted at its
/// lowest id and normalized upwards.
inline VertexSet min_multiway_cut_on_tree(const Graph& t, const VertexSet& terminals) {
  detail::require_tree(t, terminals);
  detail::RootedTree rooted(t);
  std::vector<int> active_children(t.id_bound(), 0);
  std::vector<Vertex> cut;
  for (auto it = rooted.order.rbegin(); it != rooted.order.rend(); ++it) {
    Vertex v = *it;
    const int active = active_children[static_cast<std::size_t>(v)];
    bool up;
    if (terminals.contains(v)) {
      up = active == 0;
      if (!up) cut.push_back(v);
    } else {
      up = active == 1;
      if (active >= 2) cut.push_back(v);
    }
    Vertex p = rooted.parent[static_cast<std::size_t>(v)];
    if (up && p != -1) ++active_children[static_cast<std::size_t>(p)];
  }
  return normalize_cut_upwards(t, terminals, VertexSet(std::move(cut)));
}

/// k pairwise vertex-disjoint T-paths, k at most the minimum multiway cut.
/// Repeatedly takes the lowest-id cut vertex u with no other cut vertex
/// below it, joins the two lowest terminals under u, and drops u's subtree.
inline std::vector<TPath> pack_t_paths(const Graph& t, const VertexSet& terminals, std::size_t k) {
  detail::require_tree(t, terminals);
  Graph rest = t;
  std::vector<TPath> paths;
  while (paths.size() < k) {
    VertexSet cut = min_multiway_cut_on_tree(rest, set_intersection(terminals, rest.vertices()));
    if (cut.empty())
      throw InputError("requested " + std::to_string(k) + " T-paths but the minimum cut has size " +
                       std::to_string(paths.size()));
    detail::RootedTree rooted(rest);
    Vertex u = -1;
    for (Vertex c : cut) {
      bool lowest = std::none_of(cut.begin(), cut.end(),
                                 [&](Vertex o) { return o != c && rooted.in_subtree(o, c); });
      if (lowest) { u = c; break; }
    }
    VertexSet below, below_terminals;
    for (Vertex v : rooted.order)
      if (rooted.in_subtree(v, u)) {
        below.insert(v);
        if (terminals.contains(v)) below_terminals.insert(v);
      }
    if (below_terminals.size() < 2) throw InputError("cut is not normalized");  // unreachable
    Vertex a = below_terminals.members()[0], b = below_terminals.members()[1];
    paths.push_back({a, b, forest_path(rest, a, b)});
    rest = rest.without(below);
  }
  return paths;
}

}  // namespace fvsk
