#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include <json.hpp>

#include "turan/copies.hpp"
#include "turan/errors.hpp"
#include "turan/patterns.hpp"
#include "turan/rng.hpp"
#include "turan/supersaturation.hpp"

using namespace turan;

namespace {

Hypergraph random_graph(Rng& rng, int r, Vertex n, double p) {
  std::vector<std::vector<Vertex>> edges;
  for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
    if (rng.bernoulli(p)) edges.emplace_back(idx.begin(), idx.end());
  });
  return Hypergraph(r, n, edges);
}

std::size_t min_codegree(const Hypergraph& h) {
  std::size_t m = SIZE_MAX;
  for (const auto& [s, es] : h.shadow_index()) m = std::min(m, es.size());
  return m;
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t b = 1;
  for (std::size_t i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

GreedyOptions loose() {
  GreedyOptions o;
  o.min_t = 1;
  return o;
}

}  // namespace

TEST(NearRegular, SmallExamples) {
  auto c5 = near_regular_graph(5, 2);
  for (std::size_t v = 0; v < 5; ++v) EXPECT_EQ(c5.degree(v), 2u);
  EXPECT_EQ(c5.adjacency[0], (std::vector<std::size_t>{1, 4}));

  auto k4 = near_regular_graph(4, 3);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ(k4.degree(v), 3u);

  auto g = near_regular_graph(5, 3);
  std::multiset<std::size_t> degrees;
  for (std::size_t v = 0; v < 5; ++v) degrees.insert(g.degree(v));
  EXPECT_EQ(degrees, (std::multiset<std::size_t>{2, 3, 3, 3, 3}));

  EXPECT_THROW(near_regular_graph(4, 4), std::invalid_argument);
  EXPECT_THROW(near_regular_graph(4, 0), std::invalid_argument);
}

TEST(NearRegular, DegreeAudit) {
  for (std::size_t n = 2; n <= 40; ++n) {
    for (std::size_t t = 1; t < n; ++t) {
      auto g = near_regular_graph(n, t);
      std::size_t low = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const auto& adj = g.adjacency[v];
        ASSERT_TRUE(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
        for (std::size_t u : adj) {
          ASSERT_NE(u, v);
          ASSERT_TRUE(std::binary_search(g.adjacency[u].begin(), g.adjacency[u].end(), v));
        }
        ASSERT_TRUE(adj.size() == t || adj.size() == t - 1);
        low += adj.size() == t - 1;
      }
      EXPECT_EQ(low, (n * t) % 2) << "n=" << n << " t=" << t;
    }
  }
}

TEST(Cleanup, Examples) {
  auto k5 = complete_hypergraph(3, 5);
  EXPECT_EQ(codegree_cleanup(k5, 4), k5);
  EXPECT_TRUE(codegree_cleanup(k5, 8).empty());
}

TEST(Cleanup, RandomAudit) {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    const int r = 3 + round % 2;
    const Vertex n = 10;
    auto h = random_graph(rng, r, n, 0.5);
    const std::size_t t = 2 + rng.below(5);
    auto res = codegree_cleanup_detailed(h, t);
    if (!res.graph.empty()) EXPECT_GT(2 * min_codegree(res.graph), t);
    EXPECT_GE(res.graph.edge_count() + (t / 2) * binom(n, static_cast<std::size_t>(r - 1)), h.edge_count());
    std::size_t removed = 0;
    for (const auto& ev : res.log) {
      EXPECT_LE(2 * ev.codegree, t);
      removed += ev.edges.size();
    }
    EXPECT_EQ(removed + res.kept.size(), h.edge_count());
  }
}

TEST(CodegreePartition, Examples) {
  VertexPartition p({{0, 1}, {2, 3}, {4, 5}}, 6);
  auto h = multipartite_subgraph(complete_hypergraph(3, 6), p);
  auto all_large = codegree_partition(h, p, 1);
  EXPECT_EQ(all_large.large, h);
  EXPECT_TRUE(all_large.classes.empty());

  Hypergraph one(3, 6, {{0, 2, 4}});
  auto part = codegree_partition(one, p, 1);
  EXPECT_TRUE(part.large.empty());
  ASSERT_EQ(part.classes.size(), 1u);
  EXPECT_EQ(part.classes[0].level, 0);
  EXPECT_FALSE(verify_codegree_partition(one, p, part));

  EXPECT_THROW(codegree_partition(complete_hypergraph(3, 6), p, 1), std::invalid_argument);
}

TEST(CodegreePartition, ReplayAudit) {
  Rng rng(3);
  for (int round = 0; round < 30; ++round) {
    const int r = 3 + round % 2;
    auto h = random_graph(rng, r, 14, 0.6);
    auto choice = best_random_partition(h, 4, static_cast<std::uint64_t>(round));
    const std::size_t threshold = 1 + rng.below(4);
    auto part = codegree_partition(choice.graph, choice.partition, threshold);
    auto problem = verify_codegree_partition(choice.graph, choice.partition, part);
    EXPECT_FALSE(problem) << *problem;
  }
}

TEST(CodegreePartition, ReplayCatchesTampering) {
  Rng rng(8);
  auto h = random_graph(rng, 3, 12, 0.7);
  auto choice = best_random_partition(h, 4, 1);
  auto part = codegree_partition(choice.graph, choice.partition, 2);
  ASSERT_FALSE(part.classes.empty());
  auto moved = part;
  moved.classes[0].level += 1;
  EXPECT_TRUE(verify_codegree_partition(choice.graph, choice.partition, moved));
  auto lost = part;
  lost.classes[0].edges.pop_back();
  EXPECT_TRUE(verify_codegree_partition(choice.graph, choice.partition, lost));
}

TEST(Greedy, TightPairsFollowGammaAdjacency) {
  auto h = complete_hypergraph(3, 9);
  auto path = tight_path(3, 2);
  EXPECT_THROW(greedy_tree_copies(h, path, 6), std::invalid_argument);
  for (std::size_t t : {3u, 4u, 6u}) {
    auto c = greedy_tree_copies(h, path, t, loose());
    std::set<Copy> expected;
    for (const auto& [sigma, nbhd] : h.shadow_index()) {
      auto gamma = near_regular_graph(nbhd.size(), t);
      for (std::size_t i = 0; i < nbhd.size(); ++i) {
        for (std::size_t j : gamma.adjacency[i]) {
          if (i < j) expected.insert(Copy{std::min(nbhd[i], nbhd[j]), std::max(nbhd[i], nbhd[j])});
        }
      }
    }
    EXPECT_EQ(std::set<Copy>(c.copies.begin(), c.copies.end()), expected) << "t=" << t;
    EXPECT_TRUE(c.certified);
  }
}

TEST(Greedy, SingleEdgeTreeGivesAllEdges) {
  auto h = complete_hypergraph(3, 7);
  auto c = greedy_tree_copies(h, tight_path(3, 1), 2, loose());
  EXPECT_EQ(c.copies.size(), h.edge_count());
}

TEST(Greedy, RejectsLowCodegree) {
  auto h = remove_edges(complete_hypergraph(3, 9), std::vector<EdgeIndex>{0});
  EXPECT_THROW(greedy_tree_copies(h, tight_path(3, 2), 6, loose()), ValidationError);
}

TEST(Greedy, RestrictionOfTightThreePath) {
  auto h = complete_hypergraph(3, 9);
  auto path = tight_path(3, 3);
  auto c = greedy_tree_copies(h, path, 6, loose());
  auto same = restrict_to_pattern(c, path, {0, 1, 2});
  EXPECT_EQ(same.copies, c.copies);
  auto ends = restrict_to_pattern(c, path, {0, 2});
  ASSERT_FALSE(ends.copies.empty());
  for (const auto& copy : ends.copies) {
    ASSERT_EQ(copy.size(), 2u);
    auto a = h.edge(copy[0]), b = h.edge(copy[1]);
    std::vector<Vertex> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    EXPECT_EQ(common.size(), 1u);
  }
  EXPECT_THROW(restrict_to_pattern(c, path, {0, 1}), std::invalid_argument);
}

TEST(Greedy, SamplingIsFlagged) {
  auto h = complete_hypergraph(3, 9);
  GreedyOptions o = loose();
  o.samples = 200;
  o.seed = 4;
  auto c = greedy_tree_copies(h, tight_path(3, 3), 6, o);
  EXPECT_FALSE(c.certified);
  EXPECT_LT(c.sampled_fraction, 1.0);
  auto again = greedy_tree_copies(h, tight_path(3, 3), 6, o);
  EXPECT_EQ(c.copies, again.copies);
  for (const auto& copy : c.copies) EXPECT_TRUE(is_copy_of(h, copy, c.pattern));
}

TEST(DeltaJ, SmallCollections) {
  CopyCollection c;
  c.pattern = Hypergraph(3, 4, {{0, 1, 2}, {1, 2, 3}});
  c.copies = {{0, 1}, {1, 2}};
  EXPECT_EQ(delta_j(c, 1), 2u);
  EXPECT_EQ(delta_j(c, 2), 1u);
  EXPECT_THROW(delta_j(c, 0), std::invalid_argument);
  EXPECT_THROW(delta_j(c, 3), std::invalid_argument);
}

TEST(DeltaJ, NonIncreasing) {
  auto ct = clique_tree(3);
  auto c = restrict_to_pattern(greedy_tree_copies(complete_hypergraph(3, 10), ct.tree, 4, loose()), ct.tree,
                               ct.petals);
  for (std::size_t j = 1; j < c.pattern.edge_count(); ++j) EXPECT_GE(delta_j(c, j), delta_j(c, j + 1));
}

TEST(Balanced, BaseCaseLinearTriangles) {
  auto ct = clique_tree(3);
  BalancedOptions o;
  o.min_t = 1;
  auto c = balanced_collection(complete_hypergraph(3, 8), ct.tree, ct.petals, 3, 8, 1, o);
  ASSERT_FALSE(c.copies.empty());
  ASSERT_EQ(c.trace.size(), 1u);
  EXPECT_EQ(c.trace[0].branch, "base");
  const auto f = clique_expansion(3, 3).graph;
  for (const auto& copy : c.copies) EXPECT_TRUE(is_copy_of(*c.host, copy, f));
  EXPECT_THROW(balanced_collection(complete_hypergraph(3, 8), ct.tree, ct.petals, 3, 8, 1), std::invalid_argument);
}

TEST(Balanced, SingleEdgeOneLevelUp) {
  auto t = tight_path(3, 1);
  BalancedOptions o;
  o.min_t = 1;
  auto h = complete_hypergraph(4, 9);
  auto c = balanced_collection(h, t, {0}, 4, 1, 5, o);
  ASSERT_FALSE(c.copies.empty());
  for (const auto& copy : c.copies) {
    ASSERT_EQ(copy.size(), 1u);
    EXPECT_LT(copy[0], h.edge_count());
  }
  EXPECT_EQ(c.trace.front().uniformity, 4);
}

TEST(Balanced, DenseShadowsTakeCaseOne) {
  auto t = tight_path(3, 1);
  BalancedOptions o;
  o.min_t = 1;
  auto c = balanced_collection(complete_hypergraph(4, 16), t, {0}, 4, 1, 2, o);
  ASSERT_EQ(c.trace.size(), 1u);
  EXPECT_EQ(c.trace[0].branch, "case1");
  EXPECT_FALSE(c.copies.empty());
}

TEST(Balanced, CaseTwoCopiesAreGenuine) {
  auto ct = tight_path(2, 2);
  BalancedOptions o;
  o.min_t = 1;
  o.partition_trials = 4;
  Rng rng(17);
  auto h = random_graph(rng, 3, 36, 0.9);
  // A large t pushes the threshold above every codegree, so nothing is large.
  auto c = balanced_collection(h, ct, {0, 1}, 3, 40.0, 9, o);
  ASSERT_FALSE(c.trace.empty());
  EXPECT_EQ(c.trace.front().branch, "case2");
  EXPECT_FALSE(c.copies.empty());
  const auto f = expand(tree_subgraph(ct, {0, 1}), 3).graph;
  for (const auto& copy : c.copies) EXPECT_TRUE(is_copy_of(h, copy, f));
  for (std::size_t j = 1; j < f.edge_count(); ++j) EXPECT_GE(delta_j(c, j), delta_j(c, j + 1));
}

TEST(Collection, JsonLinesDump) {
  auto c = greedy_tree_copies(complete_hypergraph(3, 6), tight_path(3, 2), 3, loose());
  std::ostringstream out;
  write_collection(out, c);
  std::istringstream in(out.str());
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  auto header = nlohmann::json::parse(line);
  EXPECT_EQ(header["copies"], c.copies.size());
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    auto row = nlohmann::json::parse(line);
    EXPECT_EQ(row.get<Copy>(), c.copies[rows]);
    ++rows;
  }
  EXPECT_EQ(rows, c.copies.size());
}
