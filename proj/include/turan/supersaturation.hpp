#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "turan/copies.hpp"
#include "turan/hypergraph.hpp"
#include "turan/tight_tree.hpp"

namespace turan {

/// Graph on [0, N) in which every vertex has degree t or t - 1.
///
/// Circulant with offsets +-1..+-floor(t/2). For odd t an extra offset is
/// added: N/2 when N is even, otherwise a matching of offset (N-1)/2 on
/// 0..N-2, which leaves vertex N-1 as the single vertex of degree t - 1.
struct AuxiliaryRegularGraph {
  std::size_t vertex_count = 0;
  std::size_t target_degree = 0;
  std::vector<std::vector<std::size_t>> adjacency;  // sorted

  std::size_t degree(std::size_t v) const { return adjacency.at(v).size(); }
};

AuxiliaryRegularGraph near_regular_graph(std::size_t n, std::size_t t);

/// Neighbours of vertex i in near_regular_graph(n, t), without building the graph.
void near_regular_neighbors(std::size_t n, std::size_t t, std::size_t i, std::vector<std::size_t>& out);

/// One step of a peeling loop: the shadow that was processed, its codegree at
/// that moment, and the edges removed with it (indices into the input graph).
struct PeelEvent {
  SmallSet shadow;
  std::size_t codegree = 0;
  std::vector<EdgeIndex> edges;
};

struct CleanupResult {
  Hypergraph graph;
  std::vector<EdgeIndex> kept;  // indices into the input, ascending
  std::vector<PeelEvent> log;
};

/// Repeatedly deletes N(sigma) for the lexicographically smallest
/// (r-1)-shadow sigma with 2 * d(sigma) <= t until none is left.
CleanupResult codegree_cleanup_detailed(const Hypergraph& h, std::size_t t);
Hypergraph codegree_cleanup(const Hypergraph& h, std::size_t t);

struct CodegreeClass {
  std::vector<int> tau;  // sorted part indices covered by the shadow
  int level = 0;         // codegree in [2^level, 2^(level+1)) when assigned
  std::vector<EdgeIndex> edges;  // indices into the input, ascending
  Hypergraph subgraph;
};

struct CodegreePartition {
  std::size_t threshold = 0;
  Hypergraph large;
  std::vector<EdgeIndex> large_edges;
  std::vector<CodegreeClass> classes;  // ordered by (tau, level)
  std::vector<PeelEvent> log;
};

/// Peels every (r-1)-shadow of codegree <= threshold into the class given
/// by its part pattern and dyadic codegree level; what survives is `large`.
CodegreePartition codegree_partition(const Hypergraph& h, const VertexPartition& p, std::size_t threshold);

/// Replays the deletion log against the input and checks every recorded
/// codegree, class membership, the exact edge partition and the final
/// codegree condition on `large`. Returns a description of the first
/// mismatch, or nullopt.
std::optional<std::string> verify_codegree_partition(const Hypergraph& h, const VertexPartition& p,
                                                     const CodegreePartition& part);

/// Per-level record of what the balanced-collection recursion did.
struct LevelTrace {
  int uniformity = 0;
  std::string branch;  // "base", "case1" or "case2"
  double t = 0;
  double threshold = 0;  // A, or t/2 in the base case
  std::size_t host_edges = 0;
  std::size_t working_edges = 0;  // after cleanup or partition
  std::size_t large_edges = 0;
  std::vector<int> tau;
  int level = -1;
  std::size_t shadow_edges = 0;
  std::uint64_t extended = 0;
  std::uint64_t dropped = 0;
  std::size_t copies = 0;
};

struct CopyCollection {
  std::shared_ptr<const Hypergraph> host;
  Hypergraph pattern{1, 0};
  std::vector<Copy> copies;  // sorted edge sets, distinct, ascending
  // Embedding-produced collections also keep the labelled images: row i
  // lists the host edge of each pattern edge. Rows are distinct but several
  // rows can share one edge set, so this is not aligned with `copies`.
  std::vector<std::vector<EdgeIndex>> labelled;
  double sampled_fraction = 1.0;
  bool certified = true;
  std::uint64_t runs = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::vector<LevelTrace> trace;
};

struct GreedyOptions {
  std::size_t min_t = 0;  // 0 means 2 * v(T)
  std::uint64_t run_budget = 4'000'000;
  std::uint64_t samples = 0;  // when nonzero, always sample this many runs
  std::uint64_t seed = 0;
  bool first_edge_all_orders = true;  // try every labelling of the first edge
};

/// Copies of the tight tree T generated by the greedy embedding algorithm:
/// choose a host edge for the first tree edge, then for each later edge step
/// from its parent's image to a Gamma(sigma)-neighbour whose new vertex is
/// unused. Exhaustive within the run budget, otherwise sampled (flagged
/// non-certified). Requires every (r-1)-shadow of H to have codegree > t.
CopyCollection greedy_tree_copies(const Hypergraph& h, const TightTreeWitness& tree, std::size_t t,
                                  const GreedyOptions& options = {});

/// Projects a collection of T-copies onto the edges of a spanning subset S.
CopyCollection restrict_to_pattern(const CopyCollection& c, const TightTreeWitness& tree,
                                   const std::vector<std::size_t>& subset);

/// Maximum number of copies sharing some j host edges.
std::uint64_t delta_j(const CopyCollection& c, std::size_t j);

struct BalancedOptions {
  std::size_t min_t = 0;  // 0 means 4 * v(T)
  int partition_trials = 16;
  double case1_factor = 1.0;  // Case 1 fires when e(large) >= factor * e(H') / log2(n)^Delta
  std::uint64_t run_budget = 4'000'000;
  std::uint64_t max_extensions = 64;  // per lower-level copy in case 2
  std::uint64_t extension_budget = 4'000'000;
};

/// Copies of F = S^(+r) in H whose co-occurrence counts are controlled, built
/// by recursing on r - k: cleanup plus greedy embedding when r = k, otherwise a
/// random r-partition followed by either greedy embedding in the high-codegree
/// part or descent to the (r-1)-graph of shadows of one codegree class and
/// extension of the lower copies.
CopyCollection balanced_collection(const Hypergraph& h, const TightTreeWitness& tree,
                                   const std::vector<std::size_t>& subset, int r, double t,
                                   std::uint64_t seed, const BalancedOptions& options = {});

/// JSON-lines dump: one header object, then one array of host edge indices per copy.
void write_collection(std::ostream& out, const CopyCollection& c);

}  // namespace turan
