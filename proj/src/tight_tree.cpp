#include "turan/tight_tree.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace turan {

namespace {

constexpr std::size_t kMaxTreeEdges = 62;

bool subset_of(std::span<const Vertex> small, std::span<const Vertex> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Vertex> without(std::span<const Vertex> e, Vertex v) {
  std::vector<Vertex> out;
  out.reserve(e.size());
  for (Vertex u : e) {
    if (u != v) out.push_back(u);
  }
  return out;
}

std::vector<Vertex> set_union(std::vector<Vertex> a, std::span<const Vertex> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

class OrderSearch {
 public:
  OrderSearch(int k, const std::vector<std::vector<Vertex>>& edges) : k_(k), edges_(edges) {}

  std::optional<TightTreeWitness> run(std::optional<std::size_t> first) {
    const std::size_t l = edges_.size();
    for (std::size_t f = 0; f < l; ++f) {
      if (first && *first != f) continue;
      order_ = {f};
      new_vertex_ = {0};
      parent_ = {0};
      std::vector<char> in_union(max_vertex_ + 1, 0);
      for (Vertex v : edges_[f]) in_union[v] = 1;
      if (extend(std::uint64_t{1} << f, in_union)) {
        TightTreeWitness w;
        w.uniformity = k_;
        for (std::size_t i : order_) w.edges.push_back(edges_[i]);
        w.new_vertex = new_vertex_;
        w.parent = parent_;
        return w;
      }
    }
    return std::nullopt;
  }

  void set_max_vertex(Vertex v) { max_vertex_ = v; }

 private:
  bool extend(std::uint64_t used, std::vector<char>& in_union) {
    const std::size_t l = edges_.size();
    if (order_.size() == l) return true;
    if (failed_.count(used)) return false;
    for (std::size_t j = 0; j < l; ++j) {
      if (used >> j & 1) continue;
      const auto& e = edges_[j];
      Vertex fresh = 0;
      int outside = 0;
      for (Vertex v : e) {
        if (!in_union[v]) {
          fresh = v;
          ++outside;
        }
      }
      if (outside != 1) continue;
      auto core = without(e, fresh);
      std::optional<std::size_t> parent;
      for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        if (subset_of(core, edges_[order_[pos]])) {
          parent = pos;
          break;
        }
      }
      if (!parent) continue;
      order_.push_back(j);
      new_vertex_.push_back(fresh);
      parent_.push_back(*parent);
      in_union[fresh] = 1;
      if (extend(used | (std::uint64_t{1} << j), in_union)) return true;
      in_union[fresh] = 0;
      order_.pop_back();
      new_vertex_.pop_back();
      parent_.pop_back();
    }
    failed_.insert(used);
    return false;
  }

  int k_;
  const std::vector<std::vector<Vertex>>& edges_;
  Vertex max_vertex_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Vertex> new_vertex_;
  std::vector<std::size_t> parent_;
  std::unordered_set<std::uint64_t> failed_;
};

}  // namespace

std::vector<Vertex> TightTreeWitness::vertices() const {
  std::vector<Vertex> vs;
  for (const auto& e : edges) vs.insert(vs.end(), e.begin(), e.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::size_t TightTreeWitness::vertex_count() const { return vertices().size(); }

TightTreeWitness TightTreeWitness::compacted() const {
  auto vs = vertices();
  auto rank = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  TightTreeWitness out = *this;
  for (auto& e : out.edges) {
    for (auto& v : e) v = rank(v);
  }
  for (std::size_t i = 1; i < out.new_vertex.size(); ++i) out.new_vertex[i] = rank(out.new_vertex[i]);
  return out;
}

Hypergraph TightTreeWitness::to_hypergraph() const {
  auto c = compacted();
  return Hypergraph(uniformity, static_cast<Vertex>(vertex_count()), c.edges);
}

void validate_witness(const TightTreeWitness& t) {
  const std::size_t l = t.edges.size();
  if (l == 0) throw std::invalid_argument("tight tree has no edges");
  if (t.new_vertex.size() != l || t.parent.size() != l) {
    throw std::invalid_argument("certificate length does not match edge count");
  }
  std::vector<Vertex> seen;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& e = t.edges[i];
    if (e.size() != static_cast<std::size_t>(t.uniformity) || !std::is_sorted(e.begin(), e.end()) ||
        std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("edge " + std::to_string(i) + " is not a sorted " +
                                  std::to_string(t.uniformity) + "-set");
    }
    if (i > 0) {
      Vertex v = t.new_vertex[i];
      if (!std::binary_search(e.begin(), e.end(), v)) {
        throw std::invalid_argument("new vertex of edge " + std::to_string(i) + " not in the edge");
      }
      if (std::binary_search(seen.begin(), seen.end(), v)) {
        throw std::invalid_argument("new vertex of edge " + std::to_string(i) + " appears earlier");
      }
      if (t.parent[i] >= i) {
        throw std::invalid_argument("parent of edge " + std::to_string(i) + " is not earlier");
      }
      if (!subset_of(without(e, v), t.edges[t.parent[i]])) {
        throw std::invalid_argument("edge " + std::to_string(i) + " minus its new vertex is not inside its parent");
      }
    }
    seen = set_union(std::move(seen), e);
  }
  if (seen.size() != static_cast<std::size_t>(t.uniformity) + l - 1) {
    throw std::invalid_argument("vertex count differs from k + l - 1");
  }
}

std::optional<TightTreeWitness> check_tight_tree(int k, const std::vector<std::vector<Vertex>>& edges,
                                                 std::optional<std::size_t> first_edge) {
  if (k < 1) throw std::invalid_argument("uniformity must be positive");
  if (edges.size() > kMaxTreeEdges) {
    throw std::invalid_argument("tight-tree search supports at most " + std::to_string(kMaxTreeEdges) + " edges");
  }
  std::vector<std::vector<Vertex>> sorted;
  sorted.reserve(edges.size());
  Vertex max_vertex = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    std::sort(e.begin(), e.end());
    if (e.size() != static_cast<std::size_t>(k) || std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("edge " + std::to_string(i) + " is not a " + std::to_string(k) + "-set");
    }
    max_vertex = std::max(max_vertex, e.back());
    sorted.push_back(std::move(e));
  }
  if (first_edge && *first_edge >= sorted.size()) throw std::out_of_range("first edge index");
  if (sorted.empty()) return std::nullopt;
  {
    auto copy = sorted;
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end()) return std::nullopt;
  }
  std::vector<Vertex> all;
  for (const auto& e : sorted) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() != static_cast<std::size_t>(k) + sorted.size() - 1) return std::nullopt;

  OrderSearch search(k, sorted);
  search.set_max_vertex(max_vertex);
  return search.run(first_edge);
}

bool is_spanning(const TightTreeWitness& t, const std::vector<std::size_t>& subset) {
  std::vector<Vertex> covered;
  for (std::size_t i : subset) {
    if (i >= t.edges.size()) throw std::out_of_range("edge position " + std::to_string(i));
    covered = set_union(std::move(covered), t.edges[i]);
  }
  return covered.size() == t.vertex_count();
}

std::vector<std::vector<std::size_t>> spanning_subgraphs(const TightTreeWitness& t) {
  const std::size_t l = t.edges.size();
  if (l > 24) throw std::invalid_argument("spanning subgraph enumeration supports at most 24 edges");
  auto c = t.compacted();
  const std::size_t v = t.vertex_count();
  std::vector<std::uint64_t> masks(l, 0);
  if (v > 64) throw std::invalid_argument("spanning subgraph enumeration supports at most 64 vertices");
  for (std::size_t i = 0; i < l; ++i) {
    for (Vertex u : c.edges[i]) masks[i] |= std::uint64_t{1} << u;
  }
  const std::uint64_t full = v == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << l); ++s) {
    std::uint64_t cover = 0;
    for (std::size_t i = 0; i < l; ++i) {
      if (s >> i & 1) cover |= masks[i];
    }
    if (cover != full) continue;
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < l; ++i) {
      if (s >> i & 1) subset.push_back(i);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

Hypergraph tree_subgraph(const TightTreeWitness& t, const std::vector<std::size_t>& subset) {
  auto c = t.compacted();
  auto ordered = subset;
  std::sort(ordered.begin(), ordered.end());
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i : ordered) {
    if (i >= c.edges.size()) throw std::out_of_range("edge position " + std::to_string(i));
    edges.push_back(c.edges[i]);
  }
  return Hypergraph(t.uniformity, static_cast<Vertex>(t.vertex_count()), edges);
}

ExpandedTree expanded_tree(const TightTreeWitness& t, const std::vector<std::size_t>& subset, int r) {
  const int k = t.uniformity;
  if (r < k) throw std::invalid_argument("target uniformity below tree uniformity");
  if (static_cast<std::size_t>(r) > kMaxUniformity) throw std::invalid_argument("target uniformity too large");
  auto s_sorted = subset;
  std::sort(s_sorted.begin(), s_sorted.end());
  s_sorted.erase(std::unique(s_sorted.begin(), s_sorted.end()), s_sorted.end());
  if (s_sorted.empty() || !is_spanning(t, s_sorted)) {
    throw std::invalid_argument("edge subset does not span the tree");
  }
  const TightTreeWitness base = t.compacted();
  const auto delta = static_cast<Vertex>(r - k);
  const auto v = static_cast<Vertex>(base.vertex_count());

  std::map<std::vector<Vertex>, std::size_t> rank_of;  // S-edge -> rank in S order
  for (std::size_t q = 0; q < s_sorted.size(); ++q) rank_of[base.edges[s_sorted[q]]] = q;

  TightTreeWitness order = base;
  if (s_sorted.front() != 0) {
    auto rerooted = check_tight_tree(k, base.edges, s_sorted.front());
    if (!rerooted) throw std::logic_error("tight tree cannot be re-rooted at a pattern edge");
    order = *rerooted;
  }

  auto expansion = [&](std::size_t rank) {
    std::vector<Vertex> xs(delta);
    for (Vertex j = 0; j < delta; ++j) xs[j] = v + static_cast<Vertex>(rank) * delta + j;
    return xs;
  };

  ExpandedTree out;
  out.tree.uniformity = r;
  out.pattern_edges.assign(s_sorted.size(), 0);
  std::vector<std::size_t> pos_of(order.edges.size(), 0);

  auto push = [&](std::vector<Vertex> e, Vertex fresh, std::size_t parent) {
    std::sort(e.begin(), e.end());
    out.tree.edges.push_back(std::move(e));
    out.tree.new_vertex.push_back(fresh);
    out.tree.parent.push_back(parent);
    return out.tree.edges.size() - 1;
  };

  for (std::size_t i = 0; i < order.edges.size(); ++i) {
    const auto& e = order.edges[i];
    auto it = rank_of.find(e);
    if (i == 0) {
      if (it == rank_of.end()) throw std::logic_error("first tree edge is not a pattern edge");
      auto first = e;
      auto xs = expansion(it->second);
      first.insert(first.end(), xs.begin(), xs.end());
      pos_of[0] = push(std::move(first), 0, 0);
      out.pattern_edges[it->second] = pos_of[0];
      continue;
    }
    const Vertex fresh = order.new_vertex[i];
    const auto core = without(e, fresh);
    const std::size_t parent_pos = pos_of[order.parent[i]];
    const auto parent_edge = out.tree.edges[parent_pos];
    std::vector<Vertex> spare;
    std::set_difference(parent_edge.begin(), parent_edge.end(), core.begin(), core.end(),
                        std::back_inserter(spare));
    if (it == rank_of.end()) {
      auto next = core;
      next.push_back(fresh);
      next.insert(next.end(), spare.begin(), spare.begin() + delta);
      pos_of[i] = push(std::move(next), fresh, parent_pos);
      continue;
    }
    auto incoming = expansion(it->second);
    incoming.push_back(fresh);
    auto cur = parent_edge;
    std::size_t prev = parent_pos;
    for (std::size_t step = 0; step < incoming.size(); ++step) {
      cur.erase(std::find(cur.begin(), cur.end(), spare[step]));
      cur.push_back(incoming[step]);
      std::sort(cur.begin(), cur.end());
      prev = push(cur, incoming[step], prev);
    }
    pos_of[i] = prev;
    out.pattern_edges[it->second] = prev;
  }
  validate_witness(out.tree);
  return out;
}

}  // namespace turan
