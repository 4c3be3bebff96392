#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "turan/hypergraph.hpp"

namespace turan {

/// A tight k-tree together with an ordering certificate: for every i >= 1,
/// new_vertex[i] lies in edge i but in no earlier edge, and
/// edges[i] - new_vertex[i] is a subset of edges[parent[i]], parent[i] < i.
/// Entry 0 of new_vertex/parent is unused.
struct TightTreeWitness {
  int uniformity = 0;
  std::vector<std::vector<Vertex>> edges;  // each sorted
  std::vector<Vertex> new_vertex;
  std::vector<std::size_t> parent;

  std::size_t edge_count() const { return edges.size(); }
  std::size_t vertex_count() const;

  /// Sorted list of the distinct vertex labels.
  std::vector<Vertex> vertices() const;

  /// Same tree with labels renamed to [0, v) in ascending order.
  TightTreeWitness compacted() const;

  /// The tree as a hypergraph on compacted labels.
  Hypergraph to_hypergraph() const;
};

/// Throws std::invalid_argument if the certificate conditions fail.
void validate_witness(const TightTreeWitness& t);

/// Searches edge orderings for a tight-tree certificate. Returns nullopt when
/// none exists. With `first_edge`, only orderings starting at that input edge
/// are considered. The input order is tried first, so an already valid order
/// is returned unchanged.
std::optional<TightTreeWitness> check_tight_tree(int k, const std::vector<std::vector<Vertex>>& edges,
                                                 std::optional<std::size_t> first_edge = std::nullopt);

/// Every edge subset (as ascending edge positions in `t`) whose union is the
/// whole vertex set of `t`, in increasing bitmask order. The full edge set is
/// always last.
std::vector<std::vector<std::size_t>> spanning_subgraphs(const TightTreeWitness& t);

/// True when the chosen edges of `t` cover all of its vertices.
bool is_spanning(const TightTreeWitness& t, const std::vector<std::size_t>& subset);

/// The sub-hypergraph of `t` (compacted labels) with the chosen edges, in
/// ascending edge order.
Hypergraph tree_subgraph(const TightTreeWitness& t, const std::vector<std::size_t>& subset);

/// A tight r-tree containing S^(+r) as a spanning subgraph, where S is a
/// spanning edge subset of the tight k-tree `t`.
///
/// Expansion vertices of S-edges are numbered as in expand(tree_subgraph(t, S), r),
/// so pattern_edges picks out an exact copy of that expansion. Each S-edge is
/// reached from its parent by a chain of single-vertex swaps; edges outside
/// S borrow their extra vertices from the parent, so no vertex lies outside
/// the pattern.
struct ExpandedTree {
  TightTreeWitness tree;
  std::vector<std::size_t> pattern_edges;  // positions in tree.edges, in S order
};

ExpandedTree expanded_tree(const TightTreeWitness& t, const std::vector<std::size_t>& subset, int r);

}  // namespace turan
