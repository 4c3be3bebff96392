#include "turan/hypergraph.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

#include "turan/rng.hpp"

namespace turan {

struct Hypergraph::Cache {
  std::unordered_map<SmallSet, EdgeIndex, SmallSetHash> lookup;
  std::once_flag incidence_once;
  std::vector<std::vector<EdgeIndex>> incidence;
  std::once_flag shadow_once;
  ShadowIndex shadow;
};

namespace {

void check_uniformity(int r) {
  if (r < 1 || static_cast<std::size_t>(r) > kMaxUniformity) {
    throw std::invalid_argument("uniformity must be in [1, " + std::to_string(kMaxUniformity) +
                                "], got " + std::to_string(r));
  }
}

}  // namespace

Hypergraph::Hypergraph(int uniformity, Vertex vertex_count)
    : r_(uniformity), n_(vertex_count), cache_(std::make_shared<Cache>()) {
  check_uniformity(r_);
}

Hypergraph::Hypergraph(int uniformity, Vertex vertex_count,
                       const std::vector<std::vector<Vertex>>& edges)
    : r_(uniformity), n_(vertex_count), cache_(std::make_shared<Cache>()) {
  check_uniformity(r_);
  flat_.reserve(edges.size() * static_cast<std::size_t>(r_));
  std::vector<Vertex> e;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    e = edges[i];
    if (e.size() != static_cast<std::size_t>(r_)) {
      throw std::invalid_argument("edge " + std::to_string(i) + " has " + std::to_string(e.size()) +
                                  " vertices, expected " + std::to_string(r_));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("edge " + std::to_string(i) + " repeats a vertex");
    }
    if (e.back() >= n_) {
      throw std::invalid_argument("edge " + std::to_string(i) + " uses vertex " +
                                  std::to_string(e.back()) + " outside [0, " + std::to_string(n_) +
                                  ")");
    }
    auto key = SmallSet::from_sorted(e);
    auto idx = static_cast<EdgeIndex>(flat_.size() / r_);
    if (cache_->lookup.emplace(key, idx).second) flat_.insert(flat_.end(), e.begin(), e.end());
  }
}

Hypergraph::Hypergraph(int uniformity, Vertex vertex_count, std::vector<Vertex> flat, bool)
    : r_(uniformity), n_(vertex_count), flat_(std::move(flat)), cache_(std::make_shared<Cache>()) {
  build_lookup();
}

void Hypergraph::build_lookup() {
  const auto m = static_cast<EdgeIndex>(edge_count());
  cache_->lookup.reserve(m);
  for (EdgeIndex i = 0; i < m; ++i) cache_->lookup.emplace(edge_set(i), i);
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edge_count());
  for (EdgeIndex i = 0; i < edge_count(); ++i) out.emplace_back(edge(i).begin(), edge(i).end());
  return out;
}

std::optional<EdgeIndex> Hypergraph::find_edge(const SmallSet& sorted) const {
  auto it = cache_->lookup.find(sorted);
  if (it == cache_->lookup.end()) return std::nullopt;
  return it->second;
}

const std::vector<EdgeIndex>& Hypergraph::incident(Vertex v) const {
  std::call_once(cache_->incidence_once, [this] {
    cache_->incidence.assign(n_, {});
    for (EdgeIndex i = 0; i < edge_count(); ++i) {
      for (Vertex u : edge(i)) cache_->incidence[u].push_back(i);
    }
  });
  return cache_->incidence.at(v);
}

const ShadowIndex& Hypergraph::shadow_index() const {
  std::call_once(cache_->shadow_once, [this] {
    for (EdgeIndex i = 0; i < edge_count(); ++i) {
      for_each_subset(edge(i), static_cast<std::size_t>(r_ - 1),
                      [&](const SmallSet& s) { cache_->shadow[s].push_back(i); });
    }
  });
  return cache_->shadow;
}

std::span<const EdgeIndex> Hypergraph::neighborhood(const SmallSet& sigma) const {
  const auto& idx = shadow_index();
  auto it = idx.find(sigma);
  if (it == idx.end()) return {};
  return it->second;
}

std::vector<EdgeIndex> Hypergraph::edges_containing(std::span<const Vertex> sigma) const {
  if (sigma.empty()) {
    std::vector<EdgeIndex> all(edge_count());
    for (EdgeIndex i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  for (Vertex v : sigma) {
    if (v >= n_) return {};
  }
  if (sigma.size() > static_cast<std::size_t>(r_)) return {};
  if (sigma.size() + 1 == static_cast<std::size_t>(r_)) {
    auto nb = neighborhood(SmallSet::from_unsorted(sigma));
    return {nb.begin(), nb.end()};
  }
  // Filter the shortest incidence list.
  Vertex pivot = sigma[0];
  for (Vertex v : sigma) {
    if (incident(v).size() < incident(pivot).size()) pivot = v;
  }
  std::vector<EdgeIndex> out;
  for (EdgeIndex e : incident(pivot)) {
    auto ev = edge(e);
    bool all = std::all_of(sigma.begin(), sigma.end(), [&](Vertex v) {
      return std::binary_search(ev.begin(), ev.end(), v);
    });
    if (all) out.push_back(e);
  }
  return out;
}

Hypergraph Hypergraph::subgraph(std::span<const EdgeIndex> keep) const {
  std::vector<Vertex> flat;
  flat.reserve(keep.size() * static_cast<std::size_t>(r_));
  for (EdgeIndex i : keep) {
    if (i >= edge_count()) throw std::out_of_range("edge index " + std::to_string(i));
    auto e = edge(i);
    flat.insert(flat.end(), e.begin(), e.end());
  }
  // Duplicates in `keep` would break simplicity; route through the checked
  // constructor in that case.
  std::vector<EdgeIndex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    std::vector<std::vector<Vertex>> edges;
    for (EdgeIndex i : keep) edges.emplace_back(edge(i).begin(), edge(i).end());
    return Hypergraph(r_, n_, edges);
  }
  return Hypergraph(r_, n_, std::move(flat), true);
}

std::size_t Hypergraph::covered_vertex_count() const {
  std::vector<char> seen(n_, 0);
  for (Vertex v : flat_) seen[v] = 1;
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
}

VertexPartition::VertexPartition(std::vector<std::vector<Vertex>> parts, Vertex vertex_count)
    : parts_(std::move(parts)), part_of_(vertex_count, -1) {
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    std::sort(parts_[p].begin(), parts_[p].end());
    for (Vertex v : parts_[p]) {
      if (v >= vertex_count) {
        throw std::invalid_argument("partition vertex " + std::to_string(v) + " out of range");
      }
      if (part_of_[v] != -1) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " appears in two parts");
      }
      part_of_[v] = static_cast<int>(p);
    }
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (part_of_[v] == -1) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " is in no part");
    }
  }
}

VertexPartition VertexPartition::from_assignment(std::vector<int> part_of, int arity) {
  VertexPartition p;
  p.parts_.assign(static_cast<std::size_t>(arity), {});
  for (std::size_t v = 0; v < part_of.size(); ++v) {
    if (part_of[v] < 0 || part_of[v] >= arity) {
      throw std::invalid_argument("part label out of range for vertex " + std::to_string(v));
    }
    p.parts_[static_cast<std::size_t>(part_of[v])].push_back(static_cast<Vertex>(v));
  }
  p.part_of_ = std::move(part_of);
  return p;
}

std::vector<SmallSet> shadows(const Hypergraph& h, int k) {
  if (k < 1 || k > h.uniformity()) {
    throw std::invalid_argument("shadow size " + std::to_string(k) + " outside [1, " +
                                std::to_string(h.uniformity()) + "]");
  }
  std::set<SmallSet> out;
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    for_each_subset(h.edge(i), static_cast<std::size_t>(k),
                    [&](const SmallSet& s) { out.insert(s); });
  }
  return {out.begin(), out.end()};
}

std::size_t codegree(const Hypergraph& h, std::span<const Vertex> sigma) {
  std::vector<Vertex> s(sigma.begin(), sigma.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return h.edges_containing(s).size();
}

std::size_t max_codegree(const Hypergraph& h, int k) {
  if (k < 1 || k > h.uniformity()) {
    throw std::invalid_argument("codegree order " + std::to_string(k) + " outside [1, " +
                                std::to_string(h.uniformity()) + "]");
  }
  if (k == h.uniformity()) return h.empty() ? 0 : 1;
  if (k == 1) {
    std::size_t best = 0;
    for (Vertex v = 0; v < h.vertex_count(); ++v) best = std::max(best, h.degree(v));
    return best;
  }
  std::unordered_map<SmallSet, std::size_t, SmallSetHash> counts;
  std::size_t best = 0;
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    for_each_subset(h.edge(i), static_cast<std::size_t>(k),
                    [&](const SmallSet& s) { best = std::max(best, ++counts[s]); });
  }
  return best;
}

Hypergraph remove_edges(const Hypergraph& h, std::span<const EdgeIndex> indices) {
  std::vector<char> drop(h.edge_count(), 0);
  for (EdgeIndex i : indices) {
    if (i >= h.edge_count()) {
      throw std::out_of_range("edge index " + std::to_string(i) + " >= edge count " +
                              std::to_string(h.edge_count()));
    }
    drop[i] = 1;
  }
  std::vector<EdgeIndex> keep;
  keep.reserve(h.edge_count());
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    if (!drop[i]) keep.push_back(i);
  }
  return h.subgraph(keep);
}

namespace {

bool one_per_part(std::span<const Vertex> e, const VertexPartition& p) {
  std::uint32_t mask = 0;
  for (Vertex v : e) {
    std::uint32_t bit = 1u << p.part_of(v);
    if (mask & bit) return false;
    mask |= bit;
  }
  return true;
}

void check_arity(const Hypergraph& h, const VertexPartition& p) {
  if (p.arity() != h.uniformity()) {
    throw std::invalid_argument("partition has " + std::to_string(p.arity()) +
                                " parts, hypergraph uniformity is " +
                                std::to_string(h.uniformity()));
  }
  if (p.vertex_count() != h.vertex_count()) {
    throw std::invalid_argument("partition covers " + std::to_string(p.vertex_count()) +
                                " vertices, hypergraph has " + std::to_string(h.vertex_count()));
  }
}

}  // namespace

bool is_partite(const Hypergraph& h, const VertexPartition& p) {
  check_arity(h, p);
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    if (!one_per_part(h.edge(i), p)) return false;
  }
  return true;
}

std::vector<EdgeIndex> multipartite_edges(const Hypergraph& h, const VertexPartition& p) {
  check_arity(h, p);
  std::vector<EdgeIndex> keep;
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    if (one_per_part(h.edge(i), p)) keep.push_back(i);
  }
  return keep;
}

Hypergraph multipartite_subgraph(const Hypergraph& h, const VertexPartition& p) {
  return h.subgraph(multipartite_edges(h, p));
}

PartitionChoice best_random_partition(const Hypergraph& h, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int r = h.uniformity();
  Rng rng(seed);
  std::vector<int> best_assign;
  std::vector<EdgeIndex> best_keep;
  bool have = false;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> assign(h.vertex_count());
    for (auto& a : assign) a = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
    auto p = VertexPartition::from_assignment(assign, r);
    auto keep = multipartite_edges(h, p);
    if (!have || keep.size() > best_keep.size()) {
      best_assign = std::move(assign);
      best_keep = std::move(keep);
      have = true;
    }
  }
  auto partition = VertexPartition::from_assignment(std::move(best_assign), r);
  auto graph = h.subgraph(best_keep);
  return {std::move(partition), std::move(graph), std::move(best_keep)};
}

Hypergraph complete_hypergraph(int r, Vertex n) {
  std::vector<std::vector<Vertex>> edges;
  for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
    edges.emplace_back(idx.begin(), idx.end());
  });
  return Hypergraph(r, n, edges);
}

}  // namespace turan
