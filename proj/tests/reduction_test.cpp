#include <gtest/gtest.h>

#include <sstream>

#include "fvsk/dimacs.hpp"
#include "fvsk/minor.hpp"
#include "fvsk/oracle.hpp"
#include "fvsk/reduction.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fvsk;
using namespace fvsk::testing;

namespace {

Graph k3() { return complete_graph(3); }
Graph c4() { return cycle_graph(4); }
Graph diamond() { return Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}); }

// Minor test by branch sets: assign every vertex of g to one of |h| branch
// sets or to none, and accept when the sets are non-empty, connected, and
// joined wherever h has an edge.
bool minor_by_branch_sets(const Graph& g, const Graph& h) {
  const auto gv = g.vertices().members();
  const auto hv = h.vertices().members();
  const std::size_t n = gv.size(), k = hv.size();
  std::vector<std::size_t> label(n, 0);
  while (true) {
    std::vector<std::vector<Vertex>> sets(k);
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] > 0) sets[label[i] - 1].push_back(gv[i]);
    bool ok = true;
    for (std::size_t b = 0; b < k && ok; ++b)
      ok = !sets[b].empty() && is_connected(g.induced(VertexSet(sets[b])));
    for (auto [p, q] : h.edges()) {
      if (!ok) break;
      const auto bp = static_cast<std::size_t>(std::find(hv.begin(), hv.end(), p) - hv.begin());
      const auto bq = static_cast<std::size_t>(std::find(hv.begin(), hv.end(), q) - hv.begin());
      bool joined = false;
      for (Vertex a : sets[bp])
        for (Vertex b : sets[bq]) joined = joined || g.has_edge(a, b);
      ok = joined;
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && label[i] == k) label[i++] = 0;
    if (i == n) return false;
    ++label[i];
  }
}

CnfFormula formula(int n, std::vector<std::vector<int>> clauses) { return {n, std::move(clauses)}; }

void expect_sound_reduction(const CnfFormula& f) {
  ReductionInstance r = reduce_cnf(f, k3_structure());
  auto deletion = find_deletion_set(r, k3());
  EXPECT_EQ(deletion.has_value(), satisfiable(f));
  if (!deletion) return;
  EXPECT_EQ(deletion->size(), r.budget);
  EXPECT_TRUE(is_feedback_vertex_set(r.graph, *deletion));
  EXPECT_TRUE(f.evaluate(extract_assignment(r, *deletion)));
}

}  // namespace

TEST(SmallMinors, MatchBranchSetOracle) {
  const std::vector<Graph> patterns{k3(), c4(), diamond(), complete_graph(4)};
  std::vector<Graph> corpus;
  for (std::size_t n = 1; n <= 4; ++n)
    for (Graph& g : all_graphs(n)) corpus.push_back(std::move(g));
  Rng rng(31);
  for (int it = 0; it < 60; ++it) corpus.push_back(random_graph(rng, 5 + it % 2, 0.5));
  for (const Graph& h : patterns)
    for (const Graph& g : corpus) EXPECT_EQ(has_minor(g, h), minor_by_branch_sets(g, h)) << to_string(classify_pattern(h));
}

TEST(SmallMinors, UnsupportedPatternIsReported) {
  EXPECT_THROW(classify_pattern(cycle_graph(5)), UnsupportedPatternError);
  EXPECT_THROW(classify_pattern(path_graph(3)), UnsupportedPatternError);
  EXPECT_EQ(classify_pattern(Graph::from_edges(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}})), SmallPattern::kCycle4);
}

TEST(Necklace, SingleBeadIsThePattern) {
  Necklace n = build_uniform_necklace(k3_structure(), 1);
  EXPECT_EQ(n.graph, k3());
  ASSERT_EQ(n.beads.size(), 1u);
}

TEST(Necklace, ThreeTriangles) {
  Necklace n = build_uniform_necklace(k3_structure(), 3);
  EXPECT_EQ(n.graph.vertex_count(), 9u);
  EXPECT_EQ(n.graph.edge_count(), 11u);
  // copy_i(x) joins copy_{i+1}(y).
  EXPECT_TRUE(n.graph.has_edge(0, 4));
  EXPECT_TRUE(n.graph.has_edge(3, 7));
}

TEST(Necklace, BlocksAreBeads) {
  for (const NecklaceStructure& s : {k3_structure(), NecklaceStructure{c4(), 0, 2}, NecklaceStructure{diamond(), 1, 3}}) {
    for (std::size_t len = 1; len <= 5; ++len) {
      Necklace n = build_uniform_necklace(s, len);
      std::vector<VertexSet> big;
      for (const VertexSet& b : biconnected_components(n.graph))
        if (b.size() >= 3) big.push_back(b);
      std::sort(big.begin(), big.end());
      std::vector<VertexSet> beads = n.beads;
      std::sort(beads.begin(), beads.end());
      EXPECT_EQ(big, beads);
    }
  }
}

TEST(Necklace, Errors) {
  EXPECT_THROW(build_uniform_necklace(k3_structure(), 0), InputError);
  EXPECT_THROW(build_uniform_necklace({k3(), 1, 1}, 2), InputError);
  EXPECT_THROW(build_uniform_necklace({Graph::from_edges(4, {{0, 1}, {2, 3}}), 0, 1}, 2), InputError);
}

TEST(Gadget, TriangleGadgetShape) {
  Gadget j = build_gadget(k3(), 0, 1, 2);
  EXPECT_EQ(j.graph.vertex_count(), 8u);
  EXPECT_EQ(j.graph.induced(j.x_set()).edge_count(), 1u);
  EXPECT_EQ(j.graph.induced(j.y_set()).edge_count(), 1u);
  EXPECT_EQ(j.x_set().size(), 2u);
  EXPECT_EQ(j.y_set().size(), 2u);
}

TEST(Gadget, CopiesOfThePatternThroughEachPair) {
  const Graph h = c4();
  Gadget j = build_gadget(h, 0, 1, 3);
  EXPECT_EQ(j.graph.vertex_count(), 2u * 3u + 9u * 2u);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      VertexSet copy = j.d[a][b];
      copy.insert(j.x_side[a]);
      copy.insert(j.y_side[b]);
      Graph sub = j.graph.induced(copy);
      EXPECT_EQ(sub.edge_count(), h.edge_count());
      EXPECT_TRUE(minor_by_branch_sets(sub, h));
    }
}

TEST(Gadget, TriangleGadgetVerifies) { EXPECT_TRUE(verify_gadget(build_gadget(k3(), 0, 1, 2), k3())); }

TEST(Gadget, AllAnchorChoicesVerifyForTriangle) {
  for (Vertex v = 0; v < 3; ++v)
    for (Vertex x = 0; x < 3; ++x)
      for (Vertex y = 0; y < 3; ++y)
        if (x != y) EXPECT_TRUE(verify_gadget(build_gadget(k3(), v, x, y), k3())) << v << x << y;
}

TEST(Gadget, LargerPatternsVerify) {
  EXPECT_TRUE(verify_gadget(build_gadget(c4(), 0, 1, 3), c4()));
  EXPECT_TRUE(verify_gadget(build_gadget(diamond(), 1, 0, 2), diamond()));
  EXPECT_TRUE(verify_gadget(build_gadget(complete_graph(4), 0, 1, 2), complete_graph(4)));
}

TEST(Gadget, DeletingADEdgeBreaksIt) {
  Gadget j = build_gadget(k3(), 0, 1, 2);
  Vertex dv = j.d[0][1].front();
  j.graph.remove_edge(dv, j.graph.neighbors(dv).front());
  EXPECT_FALSE(verify_gadget(j, k3()));
}

TEST(Gadget, RemovingXLeavesAForest) {
  Gadget j = build_gadget(k3(), 0, 1, 2);
  EXPECT_TRUE(is_forest(j.graph.without(j.x_set())));
  EXPECT_TRUE(is_forest(j.graph.without(j.y_set())));
}

TEST(Gadget, Errors) {
  EXPECT_THROW(build_gadget(path_graph(3), 0, 1, 2), InputError);
  EXPECT_THROW(build_gadget(path_graph(2), 0, 0, 1), InputError);
  EXPECT_THROW(build_gadget(k3(), 0, 1, 1), InputError);
  Graph c5 = cycle_graph(5);
  EXPECT_THROW(verify_gadget(build_gadget(c5, 0, 1, 2), c5), UnsupportedPatternError);
}

TEST(Cnf, EvaluateAndSatisfiable) {
  CnfFormula f = formula(2, {{1, -2}, {2}});
  EXPECT_TRUE(f.evaluate({true, true}));
  EXPECT_FALSE(f.evaluate({false, true}));
  EXPECT_TRUE(satisfiable(f));
  EXPECT_FALSE(satisfiable(formula(1, {{1}, {-1}})));
  EXPECT_TRUE(satisfiable(formula(3, {})));
  EXPECT_THROW(formula(1, {{2}}).validate(), InputError);
  EXPECT_THROW(formula(1, {{}}).validate(), InputError);
}

TEST(ReduceCnf, SingleClauseCounts) {
  ReductionInstance r = reduce_cnf(formula(2, {{1, -2}}), k3_structure());
  EXPECT_EQ(r.modulator.size(), 11u);
  EXPECT_EQ(r.budget, 6u);
  EXPECT_EQ(r.graph.vertex_count(), 25u);
  EXPECT_EQ(r.pattern_size, 3u);
}

TEST(ReduceCnf, EmptyFormulaHasGadgetAndS0Only) {
  ReductionInstance r = reduce_cnf(formula(1, {}), k3_structure());
  EXPECT_EQ(r.graph.vertex_count(), 11u);
  EXPECT_EQ(r.budget, 2u);
  EXPECT_TRUE(r.beads.empty());
  EXPECT_EQ(r.s0.size(), 3u);
  EXPECT_EQ(r.graph.induced(r.s0).edge_count(), 2u);
}

TEST(ReduceCnf, UnsatisfiableFormulaHasNoSmallDeletionSet) {
  CnfFormula f = formula(1, {{1}, {-1}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  ASSERT_LE(r.graph.vertex_count(), 20u);
  EXPECT_GT(brute_force_fvs(r.graph).size, r.budget);
  EXPECT_FALSE(find_deletion_set(r, k3()).has_value());
}

TEST(ReduceCnf, ModulatorIsLiteralSetsAndS0) {
  CnfFormula f = formula(3, {{1, -2, 3}, {-1}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  VertexSet expected = r.s0;
  for (std::size_t i = 0; i < 3; ++i) expected = set_union(expected, set_union(r.positive[i], r.negative[i]));
  EXPECT_EQ(r.modulator, expected);
  EXPECT_EQ(r.modulator.size(), 2u * 3u * 2u + 3u);
  EXPECT_EQ(r.budget, f.literal_occurrences() + 2u * 3u);
}

TEST(ReduceCnf, ComponentsOutsideModulatorAreNecklacesOrGadgetPieces) {
  CnfFormula f = formula(3, {{1, -2, 3}, {-1, 2}, {3}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  std::vector<VertexSet> necklaces;
  for (const auto& beads : r.beads) {
    VertexSet all;
    for (const VertexSet& b : beads) all = set_union(all, b);
    necklaces.push_back(all);
  }
  for (const VertexSet& c : connected_components(r.graph.without(r.modulator))) {
    if (std::find(necklaces.begin(), necklaces.end(), c) != necklaces.end()) continue;
    // K3 minus two vertices: a single vertex of some D set.
    EXPECT_EQ(c.size(), 1u);
    bool in_gadget = std::any_of(r.gadgets.begin(), r.gadgets.end(), [&](const VertexSet& gset) { return c.is_subset_of(gset); });
    EXPECT_TRUE(in_gadget);
  }
  EXPECT_EQ(connected_components(r.graph.without(r.modulator)).size(), 3u + 3u * 4u);
}

TEST(ReduceCnf, PackingIsDisjointAndEachElementHoldsAMinor) {
  CnfFormula f = formula(2, {{1, -2}, {2, 1}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  ASSERT_EQ(r.packing.size(), r.budget);
  for (std::size_t i = 0; i < r.packing.size(); ++i) {
    EXPECT_TRUE(has_minor(r.graph.induced(r.packing[i]), k3()));
    for (std::size_t j = i + 1; j < r.packing.size(); ++j) EXPECT_FALSE(r.packing[i].intersects(r.packing[j]));
  }
}

TEST(ReduceCnf, HooksAreJoinedToTheirLiteralSets) {
  CnfFormula f = formula(2, {{1, -2}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  for (std::size_t b = 0; b < 2; ++b) {
    const Vertex u = r.hooks[0][b];
    const VertexSet& lit = r.literal_set(f.clauses[0][b]);
    EXPECT_EQ(r.graph.neighbors_in(u, lit), 2u);
    VertexSet copy = lit;
    copy.insert(u);
    EXPECT_EQ(r.graph.induced(copy).edge_count(), 3u);
  }
}

TEST(ReduceCnf, EquivalenceOnTinyFormulas) {
  expect_sound_reduction(formula(1, {{1}}));
  expect_sound_reduction(formula(1, {{1}, {-1}}));
  expect_sound_reduction(formula(2, {{1, 2}, {-1}, {-2}}));
  expect_sound_reduction(formula(2, {{1, -2}, {-1, 2}}));
}

TEST(ReduceCnf, EquivalenceAgreesWithBruteForceWhereSmall) {
  Rng rng(77);
  int checked = 0;
  while (checked < 10) {
    CnfFormula f = random_formula(rng, 1, 3, 1);
    ReductionInstance r = reduce_cnf(f, k3_structure());
    if (r.graph.vertex_count() > 20) continue;
    ++checked;
    EXPECT_EQ(brute_force_fvs(r.graph).size <= r.budget, satisfiable(f));
    EXPECT_GE(brute_force_fvs(r.graph).size, r.budget);
  }
}

TEST(ReduceCnf, EquivalenceOnRandomFormulas) {
  Rng rng(78);
  for (int it = 0; it < 30; ++it) expect_sound_reduction(random_formula(rng, 3, 3, 3));
}

TEST(ReductionSidecar, Format) {
  CnfFormula f = formula(1, {{-1}});
  ReductionInstance r = reduce_cnf(f, k3_structure());
  std::ostringstream out;
  write_reduction_sidecar(out, r, f);
  EXPECT_EQ(out.str(),
            "budget 3\n"
            "pattern_size 3\n"
            "modulator 0 1 2 3 11 12 13\n"
            "literal +1 0 1\n"
            "literal -1 2 3\n"
            "bead 1 1 -1 hook 10 8 9 10\n"
            "s0 11 12 13\n");
}

TEST(Dimacs, Examples) {
  CnfFormula a = io::parse_dimacs("p cnf 1 1\n1 0\n");
  EXPECT_EQ(a.variable_count, 1);
  EXPECT_EQ(a.clauses, (std::vector<std::vector<int>>{{1}}));
  CnfFormula b = io::parse_dimacs("c two clauses\np cnf 2 2\n1 -2 0\n2 0\n");
  EXPECT_EQ(b.clauses.size(), 2u);
  CnfFormula spanning = io::parse_dimacs("p cnf 3 1\n1 2\n-3 0\n");
  EXPECT_EQ(spanning.clauses, (std::vector<std::vector<int>>{{1, 2, -3}}));
}

TEST(Dimacs, Errors) {
  auto message = [](const std::string& text) {
    try {
      io::parse_dimacs(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message("p cnf 2 1\n5 0\n"), "line 2: literal 5 out of range [1, 2]");
  EXPECT_EQ(message("p cnf 2 1\n1 2\n"), "line 2: clause is missing its terminating 0");
  EXPECT_EQ(message("1 0\n"), "line 1: clause before 'p cnf' header");
  EXPECT_EQ(message("p dnf 2 1\n"), "line 1: expected header 'p cnf <variables> <clauses>'");
  EXPECT_EQ(message("p cnf 2 1\n0\n"), "line 2: empty clause");
  EXPECT_EQ(message("p cnf 2 1\n1 x 0\n"), "line 2: invalid literal 'x'");
  EXPECT_EQ(message("p cnf 2 2\n1 0\n"), "line 2: header announces 2 clauses, found 1");
  EXPECT_EQ(message("c nothing\n"), "line 1: missing 'p cnf' header");
}

TEST(Dimacs, WriteRoundTrip) {
  CnfFormula f = formula(3, {{1, -3}, {2}, {-1, -2, 3}});
  std::ostringstream out;
  io::write_dimacs(out, f);
  CnfFormula back = io::parse_dimacs(out.str());
  EXPECT_EQ(back.variable_count, 3);
  EXPECT_EQ(back.clauses, f.clauses);
}
