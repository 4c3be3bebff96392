#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "turan/hypergraph.hpp"

namespace turan {

/// A copy of a pattern inside a host is identified by its edge set: the
/// ascending list of host edge indices. Two embeddings with the same image
/// edges are the same copy.
using Copy = std::vector<EdgeIndex>;

struct CopyHash {
  std::size_t operator()(const Copy& c) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (EdgeIndex e : c) {
      h ^= e;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Backtracking embedder for a fixed pattern. Edges of the pattern are placed
/// in a connectivity-first order (each next edge shares as many vertices as
/// possible with those already placed); vertices with identical edge
/// membership ("twins", e.g. the degree-one vertices of one expansion edge)
/// are forced into ascending image order so symmetric duplicates are never
/// generated. Isolated pattern vertices are ignored.
class PatternMatcher {
 public:
  explicit PatternMatcher(const Hypergraph& pattern);

  const Hypergraph& pattern() const { return pattern_; }

  /// Number of automorphisms of the pattern (restricted to covered vertices).
  std::uint64_t automorphisms() const;

  /// Exact number of copies. Throws BudgetExceeded once more than `budget`
  /// copies are certain to exist; the exception carries that lower bound.
  std::uint64_t count(const Hypergraph& host, std::uint64_t budget = kUnlimited) const;

  /// All copies, sorted. Throws BudgetExceeded past `budget` distinct copies.
  std::vector<Copy> enumerate(const Hypergraph& host, std::uint64_t budget = kUnlimited) const;

  /// Some copy, if one exists.
  std::optional<Copy> find(const Hypergraph& host) const;

  /// Number of copies that use host edge `edge` (each counted once).
  std::vector<std::uint64_t> copies_per_edge(const Hypergraph& host) const;

 private:
  struct Step {
    std::size_t pattern_edge;
    std::vector<std::size_t> anchors;   // pattern vertices already mapped
    std::vector<std::size_t> fresh;     // pattern vertices mapped here
    std::vector<int> twin_prev;         // per fresh vertex: index in `fresh` that must map lower, or -1
  };

  template <typename Visit>
  void search(const Hypergraph& host, Visit&& visit) const;

  Hypergraph pattern_;
  std::vector<std::vector<std::size_t>> pattern_edges_;  // compacted vertex ids
  std::size_t vertex_count_ = 0;
  std::vector<Step> steps_;
  std::uint64_t twin_symmetry_ = 1;  // product of twin-class factorials
  mutable std::optional<std::uint64_t> ordered_automorphisms_;
};

enum class CopyMode { kCount, kEnumerate };

std::uint64_t count_copies(const Hypergraph& host, const Hypergraph& pattern,
                           std::uint64_t budget = kUnlimited);
std::vector<Copy> enumerate_copies(const Hypergraph& host, const Hypergraph& pattern,
                                   std::uint64_t budget = kUnlimited);
bool contains_copy(const Hypergraph& host, const Hypergraph& pattern);

/// True when the two hypergraphs are isomorphic after discarding isolated
/// vertices.
bool is_isomorphic(const Hypergraph& a, const Hypergraph& b);

/// True when the listed host edges form a subgraph isomorphic to `pattern`.
bool is_copy_of(const Hypergraph& host, const Copy& edges, const Hypergraph& pattern);

/// The vertex common to every edge, if the edges share one; used to decide
/// when a star is automatically pattern-free.
bool edges_have_common_vertex(const Hypergraph& h);

}  // namespace turan
