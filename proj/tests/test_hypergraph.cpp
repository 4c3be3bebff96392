#include <gtest/gtest.h>

#include <sstream>

#include "turan/errors.hpp"
#include "turan/hypergraph.hpp"
#include "turan/hypergraph_io.hpp"
#include "turan/rational.hpp"
#include "turan/rng.hpp"

using namespace turan;

namespace {

Hypergraph random_hypergraph(int r, Vertex n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Vertex>> edges;
  for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
    if (rng.bernoulli(p)) edges.emplace_back(idx.begin(), idx.end());
  });
  return Hypergraph(r, n, edges);
}

std::size_t scan_codegree(const Hypergraph& h, const std::vector<Vertex>& sigma) {
  std::size_t c = 0;
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    bool all = true;
    for (Vertex v : sigma) all = all && std::find(e.begin(), e.end(), v) != e.end();
    c += all;
  }
  return c;
}

}  // namespace

TEST(Hypergraph, RejectsMalformedEdges) {
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 1}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 4}}), std::invalid_argument);
}

TEST(Hypergraph, SortsAndDeduplicates) {
  Hypergraph h(3, 5, {{2, 1, 0}, {0, 1, 2}, {4, 3, 2}});
  ASSERT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(h.edge_list(), (std::vector<std::vector<Vertex>>{{0, 1, 2}, {2, 3, 4}}));
}

TEST(Hypergraph, ShadowsOfSingleEdge) {
  Hypergraph h(3, 3, {{0, 1, 2}});
  auto s = shadows(h, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].to_vector(), (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(s[1].to_vector(), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(s[2].to_vector(), (std::vector<Vertex>{1, 2}));
  EXPECT_TRUE(shadows(Hypergraph(3, 5), 2).empty());
  EXPECT_EQ(shadows(complete_hypergraph(3, 4), 2).size(), 6u);
  EXPECT_THROW(shadows(h, 0), std::invalid_argument);
  EXPECT_THROW(shadows(h, 4), std::invalid_argument);
}

TEST(Hypergraph, CodegreesOfCompleteGraph) {
  auto k5 = complete_hypergraph(3, 5);
  EXPECT_EQ(k5.edge_count(), 10u);
  EXPECT_EQ(codegree(k5, std::vector<Vertex>{0, 1}), 3u);
  EXPECT_EQ(codegree(k5, std::vector<Vertex>{0}), 6u);
  EXPECT_EQ(codegree(Hypergraph(3, 4, {{0, 1, 2}}), std::vector<Vertex>{3}), 0u);
  EXPECT_EQ(max_codegree(k5, 2), 3u);
  EXPECT_EQ(max_codegree(k5, 3), 1u);
  EXPECT_EQ(max_codegree(Hypergraph(3, 5), 2), 0u);
  EXPECT_THROW(max_codegree(k5, 4), std::invalid_argument);
}

TEST(Hypergraph, RemoveEdges) {
  auto k4 = complete_hypergraph(3, 4);
  std::vector<EdgeIndex> all{0, 1, 2, 3};
  EXPECT_TRUE(remove_edges(k4, all).empty());
  EXPECT_EQ(remove_edges(k4, all).vertex_count(), 4u);
  EXPECT_EQ(remove_edges(k4, {}), k4);
  std::vector<EdgeIndex> one{0};
  auto h = remove_edges(k4, one);
  EXPECT_EQ(h.edge_count(), 3u);
  EXPECT_EQ(max_codegree(h, 2), 2u);
  std::vector<EdgeIndex> bad{9};
  EXPECT_THROW(remove_edges(k4, bad), std::out_of_range);
}

TEST(Hypergraph, MultipartiteSubgraph) {
  Hypergraph h(3, 3, {{0, 1, 2}});
  VertexPartition singletons({{0}, {1}, {2}}, 3);
  EXPECT_EQ(multipartite_subgraph(h, singletons), h);
  VertexPartition lopsided({{0, 1}, {2}, {}}, 3);
  EXPECT_TRUE(multipartite_subgraph(h, lopsided).empty());
  VertexPartition balanced({{0, 1}, {2, 3}, {4, 5}}, 6);
  EXPECT_EQ(multipartite_subgraph(complete_hypergraph(3, 6), balanced).edge_count(), 8u);
  VertexPartition two({{0, 1}, {2}}, 3);
  EXPECT_THROW(multipartite_subgraph(h, two), std::invalid_argument);
}

TEST(Hypergraph, PartitionValidation) {
  EXPECT_THROW(VertexPartition({{0, 1}, {1, 2}}, 3), std::invalid_argument);
  EXPECT_THROW(VertexPartition({{0}, {2}}, 3), std::invalid_argument);
}

TEST(Hypergraph, BestRandomPartition) {
  auto k6 = complete_hypergraph(3, 6);
  auto a = best_random_partition(k6, 50, 7);
  auto b = best_random_partition(k6, 50, 7);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.kept, b.kept);
  EXPECT_GE(static_cast<double>(a.graph.edge_count()), 6.0 / 27.0 * 20.0);
  EXPECT_TRUE(is_partite(a.graph, a.partition));
  auto empty = best_random_partition(Hypergraph(3, 6), 3, 1);
  EXPECT_TRUE(empty.graph.empty());
}

TEST(Hypergraph, CodegreeMatchesScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto h = random_hypergraph(3 + static_cast<int>(seed % 2), 9, 0.3, seed);
    std::size_t total = 0;
    for (const auto& s : shadows(h, h.uniformity() - 1)) {
      auto sigma = s.to_vector();
      EXPECT_EQ(codegree(h, sigma), scan_codegree(h, sigma));
      EXPECT_EQ(h.neighborhood(s).size(), scan_codegree(h, sigma));
      total += codegree(h, sigma);
    }
    EXPECT_EQ(total, static_cast<std::size_t>(h.uniformity()) * h.edge_count());
  }
}

TEST(Hypergraph, PartiteSubgraphNeverRaisesCodegree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = random_hypergraph(3, 10, 0.4, seed);
    auto choice = best_random_partition(h, 1, seed);
    for (const auto& s : shadows(choice.graph, 2)) {
      EXPECT_LE(codegree(choice.graph, s.view()), codegree(h, s.view()));
    }
  }
}

TEST(HypergraphIo, TextRoundTrip) {
  Hypergraph h(3, 6, {{0, 1, 2}, {1, 2, 5}});
  std::stringstream ss;
  write_text(ss, h);
  EXPECT_EQ(read_text(ss), h);
}

TEST(HypergraphIo, CommentsAndBlankLines) {
  std::istringstream in("# a comment\n\n3 4 1\n0 1 3\n");
  EXPECT_EQ(read_text(in), Hypergraph(3, 4, {{0, 1, 3}}));
}

TEST(HypergraphIo, LineNumberedErrors) {
  std::istringstream bad("3 4 2\n0 1 2\n0 1\n");
  try {
    read_text(bad);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream out_of_range("3 4 1\n0 1 9\n");
  EXPECT_THROW(read_text(out_of_range), ParseError);
  std::istringstream short_file("3 4 2\n0 1 2\n");
  EXPECT_THROW(read_text(short_file), ParseError);
}

TEST(HypergraphIo, JsonRoundTrip) {
  Hypergraph h(4, 7, {{0, 1, 2, 3}, {3, 4, 5, 6}});
  EXPECT_EQ(hypergraph_from_json(to_json(h)), h);
}

TEST(Rational, ReducesAndCompares) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(3, 2).str(), "3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_LT(Rational(2, 3), Rational(3, 4));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(2, 3).reciprocal(), Rational(3, 2));
  EXPECT_EQ(Rational::parse("2.25"), Rational(9, 4));
  EXPECT_EQ(Rational::parse("7/3"), Rational(7, 3));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rng, DerivedSeedsAreStable) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.below(17), b.below(17));
}
