#include <gtest/gtest.h>

#include "turan/copies.hpp"
#include "turan/expansion.hpp"
#include "turan/oracle.hpp"
#include "turan/patterns.hpp"
#include "turan/rng.hpp"
#include "turan/tight_tree.hpp"

using namespace turan;

using Edges = std::vector<std::vector<Vertex>>;

namespace {

// Two edges meeting in k-1 vertices already have density 1.
bool has_tight_pair(const Hypergraph& h) {
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    for (EdgeIndex j = i + 1; j < h.edge_count(); ++j) {
      auto a = h.edge(i), b = h.edge(j);
      std::vector<Vertex> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.size() + 1 == static_cast<std::size_t>(h.uniformity())) return true;
    }
  }
  return false;
}

}  // namespace

TEST(TightTree, PathKeepsInputOrder) {
  auto w = check_tight_tree(3, Edges{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->edges, (Edges{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}}));
  EXPECT_EQ(w->new_vertex[1], 3u);
  EXPECT_EQ(w->parent[1], 0u);
  EXPECT_EQ(w->new_vertex[2], 4u);
  EXPECT_EQ(w->parent[2], 1u);
}

TEST(TightTree, NegativeVerdicts) {
  EXPECT_FALSE(check_tight_tree(3, Edges{{0, 1, 2}, {2, 3, 4}}));
  EXPECT_FALSE(check_tight_tree(3, Edges{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}));
  EXPECT_FALSE(check_tight_tree(3, Edges{{0, 1, 2}, {0, 1, 2}}));
  EXPECT_THROW(check_tight_tree(3, Edges{{0, 1}}), std::invalid_argument);
}

TEST(TightTree, FindsOrderWhenInputIsShuffled) {
  auto w = check_tight_tree(3, Edges{{2, 3, 4}, {0, 1, 2}, {1, 2, 3}});
  ASSERT_TRUE(w);
  EXPECT_NO_THROW(validate_witness(*w));
}

TEST(TightTree, ValidateRejectsBrokenCertificate) {
  auto t = tight_path(3, 3);
  t.parent[2] = 0;  // {2,3} is not inside {0,1,2}
  EXPECT_THROW(validate_witness(t), std::invalid_argument);
}

TEST(TightTree, SpanningSubgraphs) {
  auto p2 = tight_path(3, 2);
  EXPECT_EQ(spanning_subgraphs(p2), (std::vector<std::vector<std::size_t>>{{0, 1}}));
  auto p1 = tight_path(3, 1);
  EXPECT_EQ(spanning_subgraphs(p1), (std::vector<std::vector<std::size_t>>{{0}}));
  auto p3 = tight_path(3, 3);
  auto subs = spanning_subgraphs(p3);
  EXPECT_NE(std::find(subs.begin(), subs.end(), std::vector<std::size_t>{0, 2}), subs.end());
  EXPECT_EQ(subs.back(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(is_spanning(p3, {0, 2}));
  EXPECT_FALSE(is_spanning(p3, {0, 1}));
}

TEST(TightTree, EnumerationCountsAndValidity) {
  EXPECT_EQ(enumerate_tight_trees(3, 1).size(), 1u);
  EXPECT_EQ(enumerate_tight_trees(3, 3).size(), 3u * 6u);
  EXPECT_EQ(enumerate_tight_trees(2, 4).size(), 8u * 6u);
  for (const auto& t : enumerate_tight_trees(3, 4)) {
    EXPECT_NO_THROW(validate_witness(t));
    EXPECT_EQ(t.vertex_count(), 3u + 3u);
  }
}

TEST(Expansion, Examples) {
  auto one = expand(Hypergraph(2, 2, {{0, 1}}), 3);
  EXPECT_EQ(one.graph.edge_list(), (Edges{{0, 1, 2}}));
  EXPECT_EQ(one.graph.vertex_count(), 3u);

  auto tri = expand(Hypergraph(2, 3, {{0, 1}, {0, 2}, {1, 2}}), 3);
  EXPECT_EQ(tri.graph.vertex_count(), 6u);
  for (EdgeIndex i = 0; i < 3; ++i) {
    for (EdgeIndex j = i + 1; j < 3; ++j) {
      auto a = tri.graph.edge(i), b = tri.graph.edge(j);
      std::vector<Vertex> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      EXPECT_EQ(common.size(), 1u);
    }
  }

  auto path = expand(Hypergraph(2, 3, {{0, 1}, {1, 2}}), 4);
  EXPECT_EQ(path.graph.edge_list(), (Edges{{0, 1, 3, 4}, {1, 2, 5, 6}}));
  EXPECT_EQ(path.graph.vertex_count(), 7u);
  EXPECT_THROW(expand(Hypergraph(3, 3, {{0, 1, 2}}), 2), std::invalid_argument);
}

TEST(Expansion, ContractRecoversBase) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto t = random_tight_tree(3, 4, seed);
    auto base = t.to_hypergraph();
    auto ex = expand(base, 5);
    for (Vertex v = base.vertex_count(); v < ex.graph.vertex_count(); ++v) EXPECT_EQ(ex.graph.degree(v), 1u);
    EXPECT_EQ(contract_expansion(ex.graph, base.vertex_count()), base);
  }
}

TEST(Density, Examples) {
  EXPECT_EQ(r_density(Hypergraph(3, 4, {{0, 1, 2}, {1, 2, 3}})), Rational(1));
  EXPECT_EQ(r_density(clique_expansion(3, 3).graph), Rational(2, 3));
  EXPECT_EQ(spreadness(clique_expansion(3, 3).graph), Rational(3, 2));
  EXPECT_EQ(spreadness(clique_expansion(4, 5).graph), Rational(7, 3));
  EXPECT_EQ(spreadness(tight_path(3, 3).to_hypergraph()), Rational(1));
  EXPECT_THROW(r_density(Hypergraph(3, 3, {{0, 1, 2}})), std::invalid_argument);
}

TEST(Density, MatchesOracleOnRandomGraphs) {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    const int r = 2 + static_cast<int>(rng.below(3));
    const Vertex n = static_cast<Vertex>(r + 2 + rng.below(3));
    Edges edges;
    const auto m = 2 + rng.below(5);  // n >= r + 2 leaves at least 6 candidate edges
    while (edges.size() < m) {
      std::vector<Vertex> e;
      while (e.size() < static_cast<std::size_t>(r)) {
        auto v = static_cast<Vertex>(rng.below(n));
        if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
      }
      std::sort(e.begin(), e.end());
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    Hypergraph h(r, n, edges);
    if (h.edge_count() < 2) continue;
    EXPECT_EQ(r_density(h), oracle::r_density(h)) << "round " << round;
  }
}

TEST(Density, ExpansionShiftsSpreadness) {
  for (int k : {2, 3}) {
    for (int l = 1; l <= 4; ++l) {
      for (const auto& t : enumerate_tight_trees(k, l)) {
        if (t.edge_count() < 2) continue;
        for (const auto& s : spanning_subgraphs(t)) {
          if (s.size() < 2) continue;
          auto base = tree_subgraph(t, s);
          const Rational sb = spreadness(base);
          for (int r = k; r <= k + 2; ++r) EXPECT_EQ(spreadness(expand(base, r).graph), sb + Rational(r - k));
          if (s.size() == t.edge_count()) EXPECT_EQ(sb, Rational(1));
          EXPECT_GE(sb, Rational(1));
          EXPECT_EQ(sb == Rational(1), has_tight_pair(base)) << "k=" << k << " l=" << l;
        }
      }
    }
  }
}

TEST(ExpandedTree, ContainsTheExpansion) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    auto t = random_tight_tree(k, 1 + static_cast<int>(seed % 4), seed);
    auto subs = spanning_subgraphs(t);
    const auto& s = subs[seed % subs.size()];
    for (int r = k; r <= k + 2; ++r) {
      auto et = expanded_tree(t, s, r);
      EXPECT_NO_THROW(validate_witness(et.tree));
      auto expected = expand(tree_subgraph(t, s), r).graph;
      std::vector<std::vector<Vertex>> picked;
      for (auto p : et.pattern_edges) picked.push_back(et.tree.edges[p]);
      EXPECT_EQ(Hypergraph(r, expected.vertex_count(), picked), expected);
      EXPECT_EQ(et.tree.vertex_count(), expected.vertex_count());
    }
  }
}

TEST(Density, ProperSpanningSubgraphCanHaveUnitSpreadness) {
  auto t = tight_path(2, 4);
  ASSERT_TRUE(is_spanning(t, {0, 1, 3}));
  EXPECT_EQ(spreadness(tree_subgraph(t, {0, 1, 3})), Rational(1));
}

TEST(Patterns, LibraryShapes) {
  auto c = linear_cycle(3, 4);
  EXPECT_EQ(c.edge_count(), 4u);
  EXPECT_EQ(c.vertex_count(), 8u);
  auto tri = clique_expansion(3, 3).graph;
  EXPECT_EQ(tri.edge_count(), 3u);
  EXPECT_FALSE(edges_have_common_vertex(tri));
  auto named = parse_pattern("clique_expansion k=3 r=3");
  EXPECT_TRUE(is_isomorphic(named.graph, tri));
  auto path = parse_pattern("tight_path k=2 l=3 r=3");
  EXPECT_EQ(path.graph.uniformity(), 3);
  EXPECT_EQ(path.graph.edge_count(), 3u);
  EXPECT_THROW(parse_pattern("no_such_pattern 1"), std::invalid_argument);
}
