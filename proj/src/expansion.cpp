#include "turan/expansion.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace turan {

ExpansionPattern expand(const Hypergraph& base, int r) {
  const int k = base.uniformity();
  if (r < k) {
    throw std::invalid_argument("expansion target " + std::to_string(r) + " below base uniformity " +
                                std::to_string(k));
  }
  const auto delta = static_cast<Vertex>(r - k);
  const auto m = static_cast<Vertex>(base.edge_count());
  const Vertex n = base.vertex_count() + m * delta;
  std::vector<std::vector<Vertex>> extra(m), edges(m);
  for (EdgeIndex i = 0; i < m; ++i) {
    auto e = base.edge(i);
    edges[i].assign(e.begin(), e.end());
    for (Vertex j = 0; j < delta; ++j) {
      extra[i].push_back(base.vertex_count() + i * delta + j);
      edges[i].push_back(extra[i].back());
    }
  }
  return ExpansionPattern{base, r, std::move(extra), Hypergraph(r, n, edges)};
}

Hypergraph contract_expansion(const Hypergraph& expanded, Vertex base_vertex_count) {
  std::vector<std::vector<Vertex>> edges;
  int k = -1;
  for (EdgeIndex i = 0; i < expanded.edge_count(); ++i) {
    std::vector<Vertex> e;
    for (Vertex v : expanded.edge(i)) {
      if (v < base_vertex_count) e.push_back(v);
    }
    if (k == -1) k = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != k) throw std::invalid_argument("expansion has uneven base edges");
    edges.push_back(std::move(e));
  }
  if (k <= 0) throw std::invalid_argument("nothing left after contraction");
  return Hypergraph(k, base_vertex_count, edges);
}

Rational r_density(const Hypergraph& h) {
  const std::size_t m = h.edge_count();
  if (m < 2) throw std::invalid_argument("r-density needs at least two edges");
  if (m > 26) throw std::invalid_argument("r-density is exhaustive; at most 26 edges supported");
  const auto r = static_cast<std::int64_t>(h.uniformity());
  std::vector<std::uint32_t> mult(h.vertex_count(), 0);
  std::int64_t covered = 0, chosen = 0;
  std::int64_t best_num = -1, best_den = 1;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << m); ++i) {
    // Gray-code step: flip one edge and update the vertex union in place.
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    gray ^= std::uint64_t{1} << bit;
    const bool adding = gray >> bit & 1;
    for (Vertex v : h.edge(static_cast<EdgeIndex>(bit))) {
      if (adding) {
        if (mult[v]++ == 0) ++covered;
      } else if (--mult[v] == 0) {
        --covered;
      }
    }
    chosen += adding ? 1 : -1;
    if (chosen < 2) continue;
    const std::int64_t num = chosen - 1, den = covered - r;
    if (best_num < 0 || num * best_den > best_num * den) {
      best_num = num;
      best_den = den;
    }
  }
  return Rational(best_num, best_den);
}

Rational spreadness(const Hypergraph& h) { return r_density(h).reciprocal(); }

}  // namespace turan
