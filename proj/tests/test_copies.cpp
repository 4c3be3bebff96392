#include <gtest/gtest.h>

#include "turan/copies.hpp"
#include "turan/errors.hpp"
#include "turan/oracle.hpp"
#include "turan/patterns.hpp"
#include "turan/rng.hpp"

using namespace turan;

namespace {

Hypergraph random_graph(Rng& rng, int r, Vertex n, double p) {
  std::vector<std::vector<Vertex>> edges;
  for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
    if (rng.bernoulli(p)) edges.emplace_back(idx.begin(), idx.end());
  });
  return Hypergraph(r, n, edges);
}

const Hypergraph& tight_pair3() {
  static const Hypergraph h(3, 4, {{0, 1, 2}, {1, 2, 3}});
  return h;
}

}  // namespace

TEST(Copies, PatternInItself) {
  for (const auto& f : {tight_pair3(), clique_expansion(3, 3).graph, linear_cycle(3, 4)}) {
    EXPECT_EQ(count_copies(f, f), 1u);
  }
}

TEST(Copies, TightPairsInK4) {
  EXPECT_EQ(count_copies(complete_hypergraph(3, 4), tight_pair3()), 6u);
  EXPECT_EQ(enumerate_copies(complete_hypergraph(3, 4), tight_pair3()).size(), 6u);
}

TEST(Copies, AutomorphismCounts) {
  EXPECT_EQ(PatternMatcher(tight_pair3()).automorphisms(), 4u);
  // Linear triangle: any permutation of the three edges; the pendants follow.
  EXPECT_EQ(PatternMatcher(clique_expansion(3, 3).graph).automorphisms(), 6u);
  EXPECT_EQ(PatternMatcher(complete_hypergraph(3, 4)).automorphisms(), 24u);
}

TEST(Copies, BudgetReportsLowerBound) {
  auto k7 = complete_hypergraph(3, 7);
  const auto total = count_copies(k7, tight_pair3());
  try {
    count_copies(k7, tight_pair3(), 10);
    FAIL() << "expected the budget to trip";
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.partial(), 10u);
    EXPECT_LE(e.partial(), total);
  }
  EXPECT_THROW(enumerate_copies(k7, tight_pair3(), 5), BudgetExceeded);
}

TEST(Copies, UniformityMismatch) {
  EXPECT_THROW(count_copies(complete_hypergraph(4, 5), tight_pair3()), std::invalid_argument);
}

TEST(Copies, MatchesPermutationOracle) {
  Rng rng(2024);
  const std::vector<Hypergraph> patterns = {
      tight_pair3(),
      clique_expansion(3, 3).graph,
      Hypergraph(3, 5, {{0, 1, 2}, {2, 3, 4}}),
      Hypergraph(3, 5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}}),
      Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}}),
      Hypergraph(2, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
      Hypergraph(2, 4, {{0, 1}, {0, 2}, {0, 3}}),
  };
  for (int round = 0; round < 60; ++round) {
    const auto& f = patterns[static_cast<std::size_t>(round) % patterns.size()];
    const Vertex n = static_cast<Vertex>(6 + rng.below(3));
    auto g = random_graph(rng, f.uniformity(), n, f.uniformity() == 2 ? 0.5 : 0.25);
    EXPECT_EQ(count_copies(g, f), oracle::count_copies(g, f)) << "round " << round;
    auto listed = enumerate_copies(g, f);
    auto masks = oracle::copy_masks(g, f);
    ASSERT_EQ(listed.size(), masks.size());
    for (const auto& c : listed) EXPECT_TRUE(is_copy_of(g, c, f));
  }
}

TEST(Copies, CopiesPerEdgeSumsToTotal) {
  Rng rng(5);
  auto g = random_graph(rng, 3, 8, 0.4);
  PatternMatcher m(clique_expansion(3, 3).graph);
  auto per = m.copies_per_edge(g);
  std::uint64_t sum = 0;
  for (auto x : per) sum += x;
  EXPECT_EQ(sum, 3 * m.count(g));
}

TEST(Copies, Isomorphism) {
  Hypergraph a(3, 6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}});
  EXPECT_TRUE(is_isomorphic(a, clique_expansion(3, 3).graph));
  EXPECT_FALSE(is_isomorphic(a, Hypergraph(3, 6, {{0, 1, 2}, {2, 3, 4}, {3, 4, 5}})));
  Hypergraph padded(3, 9, {{6, 7, 8}, {1, 7, 8}});
  EXPECT_TRUE(is_isomorphic(padded, tight_pair3()));
}

TEST(Copies, CommonVertex) {
  EXPECT_TRUE(edges_have_common_vertex(Hypergraph(3, 5, {{0, 1, 2}, {0, 3, 4}})));
  EXPECT_FALSE(edges_have_common_vertex(linear_cycle(3, 3)));
}
