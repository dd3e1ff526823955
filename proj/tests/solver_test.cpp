#include <gtest/gtest.h>

#include "fvsk/oracle.hpp"
#include "fvsk/solver.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fvsk;
using namespace fvsk::testing;

namespace {

std::size_t brute_min_cut(const Graph& t, const VertexSet& terminals) {
  for (std::size_t k = 0;; ++k) {
    bool found = false;
    for_each_subset_up_to(t.vertices(), k, [&](const VertexSet& s) {
      if (!found && s.size() == k && separated(t, s, terminals)) found = true;
    });
    if (found) return k;
  }
}

void expect_valid_packing(const Graph& t, const VertexSet& terminals, const std::vector<TPath>& paths) {
  VertexSet used;
  for (const TPath& p : paths) {
    ASSERT_GE(p.vertices.size(), 2u);
    EXPECT_EQ(p.vertices.front(), p.source);
    EXPECT_EQ(p.vertices.back(), p.target);
    EXPECT_NE(p.source, p.target);
    EXPECT_TRUE(terminals.contains(p.source));
    EXPECT_TRUE(terminals.contains(p.target));
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) EXPECT_TRUE(t.has_edge(p.vertices[i], p.vertices[i + 1]));
    for (Vertex v : p.vertices) EXPECT_TRUE(used.insert(v)) << "vertex " << v << " shared between paths";
  }
}

}  // namespace

TEST(FvsSize, Examples) {
  EXPECT_EQ(fvs_size(path_graph(7)), 0);
  EXPECT_EQ(fvs_size(complete_graph(3)), 1);
  EXPECT_EQ(fvs_size(disjoint_union(cycle_graph(4), cycle_graph(4))), 2);
  EXPECT_EQ(fvs_size(complete_graph(5)), 3);
  EXPECT_EQ(fvs_size(Graph()), 0);
}

TEST(FvsSize, InvalidDecompositionIsRejected) {
  Graph g = complete_graph(3);
  TreeDecomposition td;
  td.add_node(-1, VertexSet{0, 1});
  EXPECT_THROW(fvs_size(g, td), InputError);
}

TEST(FvsSize, MatchesBruteForce) {
  Rng rng(101);
  for (int it = 0; it < 200; ++it) {
    Graph g = random_graph(rng, 1 + rng() % 8, 0.2 + 0.15 * (it % 5));
    EXPECT_EQ(static_cast<std::size_t>(fvs_size(g)), brute_force_fvs(g).size);
  }
}

TEST(ExistsMinFvsWith, Examples) {
  Graph k3 = complete_graph(3);
  EXPECT_TRUE(exists_min_fvs_with(k3, {VertexSet{1}, {}}));
  EXPECT_FALSE(exists_min_fvs_with(k3, {VertexSet{0, 1}, {}}));
  // Opposite vertices of C4 stay connected after deleting a non-terminal.
  Graph c4 = cycle_graph(4);
  EXPECT_FALSE(exists_min_fvs_with(c4, {VertexSet{1}, VertexSet{0, 2}}));
  EXPECT_FALSE(brute_exists_min_fvs_with(c4, {VertexSet{1}, VertexSet{0, 2}}));
  // Deleting one of the two terminals separates them trivially.
  EXPECT_TRUE(exists_min_fvs_with(c4, {{}, VertexSet{0, 2}}));
  EXPECT_TRUE(brute_exists_min_fvs_with(c4, {{}, VertexSet{0, 2}}));
  // Adjacent terminals are split by deleting one of them.
  EXPECT_TRUE(exists_min_fvs_with(c4, {{}, VertexSet{0, 1}}));
}

TEST(ExistsMinFvsWith, DeletedTerminalCountsAsSeparated) {
  Graph k3 = complete_graph(3);
  EXPECT_TRUE(exists_min_fvs_with(k3, {VertexSet{0}, VertexSet{0, 1}}));
  EXPECT_FALSE(exists_min_fvs_with(k3, {{}, VertexSet{0, 1, 2}}));
}

TEST(ExistsMinFvsWith, ForeignIdsAreRejected) {
  EXPECT_THROW(exists_min_fvs_with(complete_graph(3), {VertexSet{9}, {}}), InputError);
  EXPECT_THROW(exists_min_fvs_with(complete_graph(3), {{}, VertexSet{9}}), InputError);
}

TEST(BruteExistsMinFvsWith, Examples) {
  EXPECT_TRUE(brute_exists_min_fvs_with(complete_graph(3), {}));
  EXPECT_FALSE(brute_exists_min_fvs_with(path_graph(3), {VertexSet{1}, {}}));
}

TEST(ExistsMinFvsWith, MatchesOracleOnRandomConstraints) {
  Rng rng(202);
  for (int it = 0; it < 150; ++it) {
    Graph g = random_graph(rng, 1 + rng() % 7, 0.45);
    TreeDecomposition td = decomposition_for(g);
    for (int c = 0; c < 5; ++c) {
      FvsConstraint con{random_subset(rng, g.vertices(), 0.2), random_subset(rng, g.vertices(), 0.4)};
      EXPECT_EQ(exists_min_fvs_with(g, td, con), brute_exists_min_fvs_with(g, con));
    }
  }
}

TEST(MultiwayCut, PathWithTwoTerminals) {
  Graph t = path_graph(3);
  VertexSet cut = min_multiway_cut_on_tree(t, VertexSet{0, 2});
  EXPECT_EQ(cut.size(), 1u);
  EXPECT_TRUE(separated(t, cut, VertexSet{0, 2}));
}

TEST(MultiwayCut, StarCutsAtCenter) {
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(min_multiway_cut_on_tree(star, VertexSet{1, 2, 3}), VertexSet{0});
}

TEST(MultiwayCut, SingleTerminalNeedsNothing) {
  EXPECT_TRUE(min_multiway_cut_on_tree(path_graph(4), VertexSet{2}).empty());
}

TEST(MultiwayCut, NonTreeIsRejected) {
  EXPECT_THROW(min_multiway_cut_on_tree(cycle_graph(4), VertexSet{0}), InputError);
  EXPECT_THROW(min_multiway_cut_on_tree(Graph::from_edges(4, {{0, 1}, {2, 3}}), VertexSet{0}), InputError);
  EXPECT_THROW(pack_t_paths(cycle_graph(4), VertexSet{0, 2}, 1), InputError);
}

TEST(MultiwayCut, MinimumAndNormalizedOnRandomTrees) {
  Rng rng(303);
  for (int it = 0; it < 150; ++it) {
    Graph t = random_tree(rng, 1 + rng() % 12);
    VertexSet terms = random_subset(rng, t.vertices(), 0.4);
    VertexSet cut = min_multiway_cut_on_tree(t, terms);
    EXPECT_TRUE(separated(t, cut, terms));
    EXPECT_EQ(cut.size(), brute_min_cut(t, terms));
  }
}

TEST(MultiwayCut, ParentReplacementBreaksSeparation) {
  Rng rng(304);
  for (int it = 0; it < 150; ++it) {
    Graph t = random_tree(rng, 2 + rng() % 15);
    VertexSet terms = random_subset(rng, t.vertices(), 0.4);
    VertexSet cut = min_multiway_cut_on_tree(t, terms);
    // Parent in the tree rooted at the lowest id, found by BFS here.
    std::vector<Vertex> parent(t.id_bound(), -1);
    std::vector<Vertex> queue{t.vertices().front()};
    std::vector<bool> seen(t.id_bound(), false);
    seen[queue[0]] = true;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex w : t.neighbors(queue[h]))
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = queue[h];
          queue.push_back(w);
        }
    for (Vertex u : cut) {
      if (parent[u] < 0 || cut.contains(parent[u])) continue;
      VertexSet moved = cut;
      moved.erase(u);
      moved.insert(parent[u]);
      EXPECT_FALSE(separated(t, moved, terms));
    }
  }
}

TEST(PackTPaths, PathGivesOnePath) {
  auto paths = pack_t_paths(path_graph(3), VertexSet{0, 2}, 1);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].vertices, (std::vector<Vertex>{0, 1, 2}));
}

TEST(PackTPaths, TwoPairsOnASpine) {
  // Spine 0-1; terminals 2, 3 hang off 0 and 4, 5 off 1.
  Graph t = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}});
  VertexSet terms{2, 3, 4, 5};
  EXPECT_EQ(min_multiway_cut_on_tree(t, terms), (VertexSet{0, 1}));
  auto paths = pack_t_paths(t, terms, 2);
  ASSERT_EQ(paths.size(), 2u);
  expect_valid_packing(t, terms, paths);
}

TEST(PackTPaths, NoTerminals) {
  EXPECT_TRUE(pack_t_paths(path_graph(4), VertexSet{}, 0).empty());
  EXPECT_TRUE(pack_t_paths(Graph(), VertexSet{}, 0).empty());
}

TEST(PackTPaths, MoreThanCutIsRejected) {
  EXPECT_THROW(pack_t_paths(path_graph(3), VertexSet{0, 2}, 2), InputError);
}

TEST(PackTPaths, DualityOnRandomTrees) {
  Rng rng(405);
  for (int it = 0; it < 200; ++it) {
    Graph t = random_tree(rng, 1 + rng() % 20);
    VertexSet terms = random_subset(rng, t.vertices(), 0.35);
    VertexSet cut = min_multiway_cut_on_tree(t, terms);
    auto paths = pack_t_paths(t, terms, cut.size());
    EXPECT_EQ(paths.size(), cut.size());
    expect_valid_packing(t, terms, paths);
  }
}

TEST(PackTPaths, EveryCutMeetsEveryPackedPath) {
  Rng rng(406);
  for (int it = 0; it < 80; ++it) {
    Graph t = random_tree(rng, 2 + rng() % 10);
    VertexSet terms = random_subset(rng, t.vertices(), 0.5);
    auto paths = pack_t_paths(t, terms, min_multiway_cut_on_tree(t, terms).size());
    for_each_subset_up_to(t.vertices(), t.vertex_count(), [&](const VertexSet& s) {
      if (!separated(t, s, terms)) return;
      for (const TPath& p : paths)
        EXPECT_TRUE(std::any_of(p.vertices.begin(), p.vertices.end(), [&](Vertex v) { return s.contains(v); }));
    });
  }
}
