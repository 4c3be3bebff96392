#pragma once

#include <vector>

#include "turan/hypergraph.hpp"
#include "turan/rational.hpp"

namespace turan {

/// H^(+r): each k-edge of `base` enlarged by r-k fresh degree-one vertices.
struct ExpansionPattern {
  Hypergraph base;
  int target_uniformity;
  std::vector<std::vector<Vertex>> expansion_vertices;  // per base edge
  Hypergraph graph;

  int delta() const { return target_uniformity - base.uniformity(); }
};

/// Fresh vertices are numbered from v(base) upward, grouped by base-edge order.
ExpansionPattern expand(const Hypergraph& base, int r);

/// Inverse of expand: drops the vertices >= base_vertex_count from every edge.
Hypergraph contract_expansion(const Hypergraph& expanded, Vertex base_vertex_count);

/// m(H) = max over edge subsets G with e(G) >= 2 of (e(G)-1)/(v(G)-r), where
/// v(G) counts the vertices covered by G. Exhaustive; at most 26 edges.
Rational r_density(const Hypergraph& h);

/// s(H) = 1 / m(H).
Rational spreadness(const Hypergraph& h);

}  // namespace turan
