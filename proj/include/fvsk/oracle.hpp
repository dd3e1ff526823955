#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"

namespace fvsk {

/// Vertex-count caps for the exhaustive oracles.
struct OracleLimits {
  std::size_t brute_force_cap = 20;
  std::size_t enumerate_cap = 16;

  /// Defaults overridden by FVSK_ORACLE_CAP / FVSK_ENUMERATE_CAP when set.
  static OracleLimits from_environment() {
    OracleLimits limits;
    if (const char* s = std::getenv("FVSK_ORACLE_CAP")) limits.brute_force_cap = std::stoul(s);
    if (const char* s = std::getenv("FVSK_ENUMERATE_CAP")) limits.enumerate_cap = std::stoul(s);
    return limits;
  }
};

struct FvsWitness {
  std::size_t size = 0;
  VertexSet witness;
};

namespace detail {

// Graph re-indexed onto 0..n-1 so that vertex subsets fit in a bitmask.
class MaskGraph {
 public:
  explicit MaskGraph(const Graph& g) : ids_(g.vertices().members()) {
    std::vector<int> index(g.id_bound(), -1);
    for (std::size_t i = 0; i < ids_.size(); ++i) index[static_cast<std::size_t>(ids_[i])] = static_cast<int>(i);
    for (auto [u, v] : g.edges())
      edges_.emplace_back(index[static_cast<std::size_t>(u)], index[static_cast<std::size_t>(v)]);
  }

  std::size_t size() const { return ids_.size(); }

  /// True iff the graph minus the vertices in `removed` is acyclic.
  bool acyclic_without(std::uint64_t removed) const {
    int parent[64];
    std::iota(parent, parent + ids_.size(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (auto [u, v] : edges_) {
      if ((removed >> u & 1) || (removed >> v & 1)) continue;
      int a = find(u), b = find(v);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  }

  VertexSet to_set(std::uint64_t mask) const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (mask >> i & 1) out.push_back(ids_[i]);
    return VertexSet(std::move(out));
  }

  /// Calls f(mask) for every k-subset in colexicographic order; stops early
  /// when f returns true.
  template <typename F>
  bool for_each_subset_of_size(std::size_t k, F&& f) const {
    const std::size_t n = ids_.size();
    if (k > n) return false;
    if (k == 0) return f(std::uint64_t{0});
    std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (mask < limit) {
      if (f(mask)) return true;
      // Gosper's hack: next integer with the same popcount.
      std::uint64_t c = mask & (~mask + 1);
      std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
    return false;
  }

 private:
  std::vector<Vertex> ids_;
  std::vector<std::pair<int, int>> edges_;
};

}  // namespace detail

/// Minimum feedback vertex set by exhaustive search in order of increasing
/// size. The witness is the first minimum set in colexicographic order.
inline FvsWitness brute_force_fvs(const Graph& g, const OracleLimits& limits = {}) {
  if (g.vertex_count() > limits.brute_force_cap || g.vertex_count() > 63)
    throw OracleLimitError(g.vertex_count(), limits.brute_force_cap);
  detail::MaskGraph mg(g);
  for (std::size_t k = 0; k <= mg.size(); ++k) {
    std::uint64_t found = 0;
    if (mg.for_each_subset_of_size(k, [&](std::uint64_t mask) {
          if (!mg.acyclic_without(mask)) return false;
          found = mask;
          return true;
        }))
      return {k, mg.to_set(found)};
  }
  return {mg.size(), g.vertices()};  // unreachable: removing everything is acyclic
}

/// Every minimum-cardinality feedback vertex set, each exactly once, in
/// colexicographic order of the sorted vertex ids.
inline std::vector<VertexSet> enumerate_minimum_fvs(const Graph& g,
                                                    const OracleLimits& limits = {}) {
  if (g.vertex_count() > limits.enumerate_cap || g.vertex_count() > 63)
    throw OracleLimitError(g.vertex_count(), limits.enumerate_cap);
  detail::MaskGraph mg(g);
  std::vector<VertexSet> out;
  for (std::size_t k = 0; k <= mg.size() && out.empty(); ++k) {
    mg.for_each_subset_of_size(k, [&](std::uint64_t mask) {
      if (mg.acyclic_without(mask)) out.push_back(mg.to_set(mask));
      return false;
    });
  }
  return out;
}

}  // namespace fvsk
