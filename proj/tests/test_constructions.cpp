#include <gtest/gtest.h>

#include <cmath>

#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/oracle.hpp"
#include "turan/patterns.hpp"
#include "turan/random_turan.hpp"

using namespace turan;

namespace {

const Hypergraph& linear_triangle() {
  static const Hypergraph h = clique_expansion(3, 3).graph;
  return h;
}

ProgressionFreeSet set_of(int n, std::vector<int> xs) { return {n, std::move(xs)}; }

}  // namespace

TEST(Behrend, SmallCases) {
  EXPECT_EQ(behrend_set(1, BehrendMode::kExhaustive).elements, std::vector<int>{1});
  EXPECT_EQ(behrend_set(1, BehrendMode::kConstructive).elements, std::vector<int>{1});
  EXPECT_EQ(behrend_set(8, BehrendMode::kExhaustive).elements.size(), 4u);
  EXPECT_THROW(behrend_set(0, BehrendMode::kExhaustive), std::invalid_argument);
  EXPECT_THROW(behrend_set(41, BehrendMode::kExhaustive), std::invalid_argument);
}

TEST(Behrend, ExhaustiveMatchesSubsetOracle) {
  for (int n = 1; n <= 18; ++n) {
    auto s = behrend_set(n, BehrendMode::kExhaustive);
    EXPECT_EQ(s.elements.size(), oracle::max_progression_free(n)) << "N=" << n;
    EXPECT_TRUE(oracle::progression_free(s.elements));
  }
}

TEST(Behrend, ConstructiveIsValidAndBelowOptimum) {
  for (int n = 1; n <= 40; ++n) {
    auto c = behrend_set(n, BehrendMode::kConstructive);
    auto e = behrend_set(n, BehrendMode::kExhaustive);
    EXPECT_TRUE(oracle::progression_free(c.elements)) << n;
    EXPECT_LE(c.elements.size(), e.elements.size()) << n;
    for (int x : c.elements) {
      EXPECT_GE(x, 1);
      EXPECT_LE(x, n);
    }
  }
  auto mid = behrend_set(500, BehrendMode::kConstructive);
  auto big = behrend_set(2000, BehrendMode::kConstructive);
  EXPECT_TRUE(is_progression_free(big.elements));
  EXPECT_GE(big.elements.size(), mid.elements.size());
}

TEST(Behrend, ValidatorCatchesProgressions) {
  EXPECT_FALSE(is_progression_free({1, 2, 3}));
  EXPECT_FALSE(is_progression_free({1, 4, 7, 8}));
  EXPECT_TRUE(is_progression_free({1, 2, 4, 5}));
}

TEST(Star, Examples) {
  EXPECT_EQ(star_witness(complete_hypergraph(3, 5), 0).edge_count(), 6u);
  EXPECT_TRUE(star_witness(Hypergraph(3, 5), 2).empty());
  EXPECT_FALSE(contains_copy(star_witness(complete_hypergraph(3, 8), 0), linear_triangle()));
  EXPECT_TRUE(contains_copy(complete_hypergraph(3, 8), linear_triangle()));
}

TEST(RandomDeletion, Examples) {
  Hypergraph free(3, 6, {{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(random_deletion_witness(free, linear_triangle(), 1), free);
  EXPECT_EQ(random_deletion_witness(linear_triangle(), linear_triangle(), 1).edge_count(), 2u);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = sample_gnp(9, 3, 0.3, seed);
    auto res = delete_edge_per_copy(g, linear_triangle(), seed);
    EXPECT_FALSE(contains_copy(res.witness, linear_triangle()));
    EXPECT_GE(res.witness.edge_count() + res.copies, g.edge_count());
    EXPECT_EQ(res.witness.edge_count() + res.deleted, g.edge_count());
  }
}

TEST(RuzsaSzemeredi, SmallExample) {
  auto h = rs_hypergraph(5, 3, set_of(5, {1, 2}));
  EXPECT_EQ(h.edge_count(), 10u);
  EXPECT_EQ(h.vertex_count(), 30u);
  EXPECT_LE(max_codegree(h, 2), 1u);
  EXPECT_TRUE(rs_hypergraph(5, 3, set_of(5, {})).empty());
  EXPECT_THROW(rs_hypergraph(5, 3, set_of(5, {1, 2, 3})), std::invalid_argument);
}

TEST(RuzsaSzemeredi, EdgeCountAndLinearity) {
  for (int m : {6, 10, 17}) {
    auto a = behrend_set(m, BehrendMode::kExhaustive);
    auto h = rs_hypergraph(static_cast<std::size_t>(m), 3, a);
    EXPECT_EQ(h.edge_count(), static_cast<std::size_t>(m) * a.elements.size());
    EXPECT_LE(max_codegree(h, 2), 1u);
    EXPECT_FALSE(contains_copy(h, linear_triangle()));
  }
}

TEST(ValidateGj, Violations) {
  auto pair = validate_gj(Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}}), 2);
  EXPECT_FALSE(pair.ok);
  EXPECT_EQ(pair.witness.size(), 2u);
  auto tri = validate_gj(linear_triangle(), 2);
  EXPECT_FALSE(tri.ok);
  EXPECT_EQ(tri.witness.size(), 3u);
  EXPECT_TRUE(validate_gj(rs_hypergraph(5, 3, set_of(5, {1, 2})), 2).ok);
  EXPECT_TRUE(validate_gj(Hypergraph(4, 6), 3).ok);
}

TEST(Blowup, Examples) {
  auto base = rs_hypergraph(5, 3, set_of(5, {1, 2}));
  auto id = blowup(base, base.vertex_count());
  EXPECT_EQ(id.blown, base);
  auto single = blowup(Hypergraph(3, 3, {{0, 1, 2}}), 6);
  EXPECT_EQ(single.blown.edge_count(), 8u);
  EXPECT_THROW(blowup(base, 10), std::invalid_argument);
}

TEST(Blowup, ProjectionAudit) {
  auto base = rs_hypergraph(4, 3, set_of(4, {1, 2}));
  auto b = blowup(base, 53);
  auto [lo, hi] = std::minmax_element(b.part_sizes.begin(), b.part_sizes.end());
  EXPECT_LE(*hi - *lo, 1u);
  std::size_t expected = 0;
  for (EdgeIndex i = 0; i < base.edge_count(); ++i) {
    std::size_t prod = 1;
    for (Vertex w : base.edge(i)) prod *= b.part_sizes[w];
    expected += prod;
  }
  EXPECT_EQ(b.blown.edge_count(), expected);
  for (EdgeIndex i = 0; i < b.blown.edge_count(); ++i) {
    std::vector<Vertex> img;
    for (Vertex v : b.blown.edge(i)) img.push_back(b.f[v]);
    std::sort(img.begin(), img.end());
    ASSERT_EQ(std::unique(img.begin(), img.end()), img.end());
    EXPECT_TRUE(base.find_edge(SmallSet::from_sorted(img)).has_value());
  }
}

TEST(Gj2, Checks) {
  auto base = rs_hypergraph(5, 3, set_of(5, {1, 2}));
  auto same = gj2_check(blowup(base, 30), 2);
  EXPECT_TRUE(same.ok);
  EXPECT_EQ(same.copies, 0u);
  auto doubled = gj2_check(blowup(base, 60), 2);
  EXPECT_TRUE(doubled.ok);
  EXPECT_GT(doubled.copies, 0u);
  EXPECT_THROW(gj2_check(blowup(Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}}), 8), 2), std::invalid_argument);
}

TEST(IntersectAndPrune, Examples) {
  auto b = blowup(rs_hypergraph(5, 3, set_of(5, {1, 2})), 30);
  auto none = intersect_and_prune(b, 0.0, 3, 4);
  EXPECT_EQ(none.x, 0u);
  EXPECT_EQ(none.y, 0u);
  EXPECT_TRUE(none.witness.empty());
  auto all = intersect_and_prune(b, 1.0, 3, 4);
  EXPECT_EQ(all.x, b.blown.edge_count());
  EXPECT_FALSE(contains_copy(all.witness, linear_triangle()));
  auto wide = blowup(rs_hypergraph(5, 3, set_of(5, {1, 2})), 75);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto res = intersect_and_prune(wide, 0.5, 3, seed);
    EXPECT_GE(res.witness.edge_count() + res.y, res.x);
    EXPECT_FALSE(contains_copy(res.witness, linear_triangle()));
  }
}

TEST(SimplexRecipe, MatchesFormula) {
  const double p = std::pow(200.0, -1.2);
  const double expected = std::pow(p, 2.0 / 3.0) * 200.0 * std::exp(std::sqrt(std::log(200.0)));
  EXPECT_EQ(simplex_recipe_m(200, p, 3, 3), static_cast<std::size_t>(std::llround(expected)));
}

TEST(SimplexExperiment, SmallRun) {
  GjExperimentConfig cfg;
  cfg.n = 60;
  cfg.p = 0.3;
  cfg.runs = 3;
  auto e = gj_experiment(cfg);
  EXPECT_LE(e.base_vertices, cfg.n);
  ASSERT_EQ(e.runs.size(), 3u);
  for (const auto& run : e.runs) EXPECT_TRUE(run.certified);
  EXPECT_EQ(gj_experiment(cfg).runs[1].x, e.runs[1].x);
}
