#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "turan/small_set.hpp"

namespace turan {

using ShadowIndex = std::unordered_map<SmallSet, std::vector<EdgeIndex>, SmallSetHash>;

/// An r-uniform hypergraph on the vertex set [0, n).
///
/// Edges are stored as sorted r-tuples in insertion order, with duplicates
/// dropped (first occurrence wins). Values are immutable once constructed;
/// every operation that changes the edge set returns a new object. The
/// incidence lists and the (r-1)-shadow index are built on first use and
/// shared between copies, so concurrent readers are safe.
class Hypergraph {
 public:
  /// Empty hypergraph.
  Hypergraph(int uniformity, Vertex vertex_count);

  Hypergraph(int uniformity, Vertex vertex_count, const std::vector<std::vector<Vertex>>& edges);

  int uniformity() const { return r_; }
  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return flat_.size() / static_cast<std::size_t>(r_); }
  bool empty() const { return flat_.empty(); }

  std::span<const Vertex> edge(EdgeIndex i) const {
    return {flat_.data() + static_cast<std::size_t>(i) * r_, static_cast<std::size_t>(r_)};
  }
  SmallSet edge_set(EdgeIndex i) const { return SmallSet::from_sorted(edge(i)); }
  std::vector<std::vector<Vertex>> edge_list() const;

  /// Index of the edge equal to the sorted vertex set, if present.
  std::optional<EdgeIndex> find_edge(const SmallSet& sorted) const;
  bool has_edge(const SmallSet& sorted) const { return find_edge(sorted).has_value(); }

  /// Edges containing vertex v, ascending.
  const std::vector<EdgeIndex>& incident(Vertex v) const;

  /// Vertex degrees (number of incident edges).
  std::size_t degree(Vertex v) const { return incident(v).size(); }

  /// The (r-1)-shadow index: each (r-1)-subset of an edge maps to the
  /// ascending list of edges containing it.
  const ShadowIndex& shadow_index() const;

  /// N_H(sigma) for an (r-1)-set sigma; empty when sigma is not a shadow.
  std::span<const EdgeIndex> neighborhood(const SmallSet& sigma) const;

  /// Edges containing every vertex of `sigma` (any size), ascending.
  std::vector<EdgeIndex> edges_containing(std::span<const Vertex> sigma) const;

  /// The subgraph keeping exactly the listed edges, in the listed order.
  Hypergraph subgraph(std::span<const EdgeIndex> keep) const;

  /// Number of vertices that lie in at least one edge.
  std::size_t covered_vertex_count() const;

  bool operator==(const Hypergraph& other) const {
    return r_ == other.r_ && n_ == other.n_ && flat_ == other.flat_;
  }

 private:
  struct Cache;

  Hypergraph(int uniformity, Vertex vertex_count, std::vector<Vertex> flat, bool trusted);
  void build_lookup();

  int r_;
  Vertex n_;
  std::vector<Vertex> flat_;
  std::shared_ptr<Cache> cache_;
};

/// A partition of [0, n) into `arity` labelled parts (parts may be empty).
class VertexPartition {
 public:
  VertexPartition(std::vector<std::vector<Vertex>> parts, Vertex vertex_count);
  static VertexPartition from_assignment(std::vector<int> part_of, int arity);

  int arity() const { return static_cast<int>(parts_.size()); }
  Vertex vertex_count() const { return static_cast<Vertex>(part_of_.size()); }
  int part_of(Vertex v) const { return part_of_.at(v); }
  const std::vector<std::vector<Vertex>>& parts() const { return parts_; }

 private:
  VertexPartition() = default;
  std::vector<std::vector<Vertex>> parts_;
  std::vector<int> part_of_;
};

/// All k-subsets contained in at least one edge, sorted lexicographically.
std::vector<SmallSet> shadows(const Hypergraph& h, int k);

/// d_H(sigma): number of edges containing sigma.
std::size_t codegree(const Hypergraph& h, std::span<const Vertex> sigma);

/// Delta_k(H): the maximum codegree over k-sets.
std::size_t max_codegree(const Hypergraph& h, int k);

/// H - E'. Throws std::out_of_range on an invalid index.
Hypergraph remove_edges(const Hypergraph& h, std::span<const EdgeIndex> indices);

/// True when every edge meets each part in exactly one vertex.
bool is_partite(const Hypergraph& h, const VertexPartition& p);

/// Indices of the edges with exactly one vertex in each part.
std::vector<EdgeIndex> multipartite_edges(const Hypergraph& h, const VertexPartition& p);
Hypergraph multipartite_subgraph(const Hypergraph& h, const VertexPartition& p);

struct PartitionChoice {
  VertexPartition partition;
  Hypergraph graph;
  std::vector<EdgeIndex> kept;  // indices into the input hypergraph
};

/// Samples `trials` partitions (each vertex independently uniform among r
/// parts) and keeps the one whose r-partite subgraph has the most edges.
/// The earliest trial wins ties.
PartitionChoice best_random_partition(const Hypergraph& h, int trials, std::uint64_t seed);

/// The complete r-graph on n vertices, edges in lexicographic order.
Hypergraph complete_hypergraph(int r, Vertex n);

}  // namespace turan
