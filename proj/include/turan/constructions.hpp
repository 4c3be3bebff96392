#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turan/copies.hpp"
#include "turan/hypergraph.hpp"

namespace turan {

/// A subset of [1, N] with no x < y < z satisfying x + z = 2y.
struct ProgressionFreeSet {
  int ambient = 0;
  std::vector<int> elements;  // ascending
};

enum class BehrendMode { kExhaustive, kConstructive };

inline constexpr int kExhaustiveBehrendCap = 40;

/// Checks every pair of a sorted set for a completing third term.
bool is_progression_free(const std::vector<int>& sorted);

/// Exhaustive: a maximum progression-free subset of [1, N] (N <= 40).
/// Constructive: integers whose base-(2b-1) digits are all < b and lie on a
/// common sphere; b and the radius are scanned for the largest output.
ProgressionFreeSet behrend_set(int n, BehrendMode mode);

/// All edges of g containing v.
Hypergraph star_witness(const Hypergraph& g, Vertex v);

struct PruneResult {
  Hypergraph witness{1, 0};
  std::uint64_t copies = 0;   // copies of the pattern in the input
  std::uint64_t deleted = 0;  // edges removed
};

/// Walks the pattern copies of g in a seeded random order and deletes a
/// random edge of every copy that is still intact. The output is re-counted
/// and a ValidationError is raised if any copy survives.
PruneResult delete_edge_per_copy(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                                 std::uint64_t budget = kUnlimited);

Hypergraph random_deletion_witness(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                                   std::uint64_t budget = kUnlimited);

/// Number of vertices of rs_hypergraph(m, r, ...): part i holds i*m ids.
Vertex rs_vertex_count(std::size_t m, int r);

/// One r-edge {x + (i-1)a : i = 1..r} per x in [m], a in A, with the i-th
/// vertex taken from part i. The result is validated by validate_gj(., 2) and
/// a ValidationError carrying the violation is raised if it fails.
Hypergraph rs_hypergraph(std::size_t m, int r, const ProgressionFreeSet& a);

struct GjCertificate {
  bool ok = true;
  std::string violation;          // empty when ok
  std::vector<EdgeIndex> witness;  // offending edges
  std::size_t edges = 0;
};

/// (a) any two edges meet in at most k-1 vertices; (b) no copy of
/// K_{k+1}^{k(+r)}. Returns the first violation found.
GjCertificate validate_gj(const Hypergraph& h, int k);

/// Balanced blowup: base vertex w becomes the contiguous id range
/// [part_start[w], part_start[w] + part_sizes[w]); the first n mod v(base)
/// parts get the larger size.
struct BlowupMap {
  Hypergraph base{1, 0};
  Hypergraph blown{1, 0};
  std::vector<Vertex> f;  // blown vertex -> base vertex
  std::vector<std::size_t> part_sizes;
  std::vector<Vertex> part_start;
};

BlowupMap blowup(const Hypergraph& base, Vertex n);

struct Gj2Certificate {
  bool ok = true;
  std::uint64_t copies = 0;
  std::string violation;
  Copy witness;
};

/// Every copy of K_{k+1}^{k(+r)} in the blowup must have all of its edges
/// projecting to the same base edge. Throws invalid_argument if the base
/// fails validate_gj(., k) and BudgetExceeded past `budget` copies.
Gj2Certificate gj2_check(const BlowupMap& b, int k, std::uint64_t budget = kUnlimited);

struct PruneOutcome {
  std::uint64_t x = 0;  // sampled edges
  std::uint64_t y = 0;  // copies of K_k^{k-1(+r)} among them
  Hypergraph witness{1, 0};
};

/// Keeps each blown edge with probability p, counts the copies of
/// K_k^{k-1(+r)} and deletes one edge per copy.
PruneOutcome intersect_and_prune(const BlowupMap& b, double p, int k, std::uint64_t seed,
                                 std::uint64_t budget = kUnlimited);

/// m = round(p^((k-1)/((r-k+1)(k-1)+1)) * n * exp(sqrt(ln n))), natural log.
std::size_t simplex_recipe_m(Vertex n, double p, int r, int k);

struct GjExperimentConfig {
  Vertex n = 200;
  double p = 0.0;
  int r = 3;
  int k = 3;
  std::size_t runs = 20;
  std::uint64_t seed = 1;
  std::uint64_t budget = kUnlimited;
};

struct GjExperimentRun {
  std::uint64_t seed = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::size_t witness_edges = 0;
  bool certified = false;
};

struct GjExperiment {
  std::size_t recipe_m = 0;  // value of the recipe before fitting the base into n vertices
  std::size_t base_m = 0;    // progression range used for the base
  std::size_t progression_size = 0;
  Vertex base_vertices = 0;
  std::size_t base_edges = 0;
  std::size_t blown_edges = 0;
  std::vector<GjExperimentRun> runs;
};

/// The k = 3 simplex lower-bound experiment. The base is rs_hypergraph with
/// the largest progression range whose vertex count fits within both the
/// recipe m and n, blown up to n vertices.
GjExperiment gj_experiment(const GjExperimentConfig& cfg);

}  // namespace turan
