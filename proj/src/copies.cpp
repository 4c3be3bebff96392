#include "turan/copies.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr Vertex kUnmapped = std::numeric_limits<Vertex>::max();

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Stop signal for the search callbacks.
struct Stop {};

}  // namespace

PatternMatcher::PatternMatcher(const Hypergraph& pattern) : pattern_(pattern) {
  if (pattern.empty()) throw std::invalid_argument("pattern has no edges");
  // Compact the covered vertices.
  std::vector<std::size_t> id(pattern.vertex_count(), SIZE_MAX);
  for (EdgeIndex i = 0; i < pattern.edge_count(); ++i) {
    for (Vertex v : pattern.edge(i)) id[v] = 0;
  }
  for (auto& x : id) {
    if (x != SIZE_MAX) x = vertex_count_++;
  }
  pattern_edges_.resize(pattern.edge_count());
  std::vector<std::vector<std::size_t>> membership(vertex_count_);
  std::vector<std::size_t> degree(vertex_count_, 0);
  for (EdgeIndex i = 0; i < pattern.edge_count(); ++i) {
    for (Vertex v : pattern.edge(i)) {
      pattern_edges_[i].push_back(id[v]);
      membership[id[v]].push_back(i);
      ++degree[id[v]];
    }
  }

  // Edge order: start from the heaviest edge, then always take the edge with
  // the most already-placed vertices.
  const std::size_t m = pattern_edges_.size();
  std::vector<char> placed_edge(m, 0), placed_vertex(vertex_count_, 0);
  auto weight = [&](std::size_t e) {
    std::size_t w = 0;
    for (std::size_t v : pattern_edges_[e]) w += degree[v];
    return w;
  };
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = SIZE_MAX, best_overlap = 0, best_weight = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (placed_edge[e]) continue;
      std::size_t overlap = 0;
      for (std::size_t v : pattern_edges_[e]) overlap += placed_vertex[v];
      std::size_t w = weight(e);
      if (best == SIZE_MAX || overlap > best_overlap || (overlap == best_overlap && w > best_weight)) {
        best = e;
        best_overlap = overlap;
        best_weight = w;
      }
    }
    Step s;
    s.pattern_edge = best;
    for (std::size_t v : pattern_edges_[best]) {
      (placed_vertex[v] ? s.anchors : s.fresh).push_back(v);
    }
    s.twin_prev.assign(s.fresh.size(), -1);
    for (std::size_t a = 0; a < s.fresh.size(); ++a) {
      for (std::size_t b = a; b-- > 0;) {
        if (membership[s.fresh[a]] == membership[s.fresh[b]]) {
          s.twin_prev[a] = static_cast<int>(b);
          break;
        }
      }
    }
    for (std::size_t v : s.fresh) placed_vertex[v] = 1;
    placed_edge[best] = 1;
    steps_.push_back(std::move(s));
  }

  // Twin classes: group vertices by membership list.
  std::vector<std::size_t> order(vertex_count_);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return membership[a] < membership[b]; });
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && membership[order[j]] == membership[order[i]]) ++j;
    twin_symmetry_ *= factorial(j - i);
    i = j;
  }
}

template <typename Visit>
void PatternMatcher::search(const Hypergraph& host, Visit&& visit) const {
  if (host.uniformity() != pattern_.uniformity()) {
    throw std::invalid_argument("host uniformity " + std::to_string(host.uniformity()) +
                                " differs from pattern uniformity " +
                                std::to_string(pattern_.uniformity()));
  }
  if (host.edge_count() < pattern_edges_.size()) return;
  const std::size_t m = steps_.size();
  const auto r = static_cast<std::size_t>(host.uniformity());
  std::vector<Vertex> image(vertex_count_, kUnmapped);
  std::vector<char> used(host.vertex_count(), 0);
  std::vector<EdgeIndex> chosen(pattern_edges_.size(), 0);
  std::vector<std::vector<EdgeIndex>> buffers(m);
  std::vector<EdgeIndex> all_edges;

  auto candidates = [&](std::size_t depth) -> std::span<const EdgeIndex> {
    const Step& s = steps_[depth];
    if (s.anchors.empty()) {
      if (all_edges.empty()) {
        all_edges.resize(host.edge_count());
        std::iota(all_edges.begin(), all_edges.end(), EdgeIndex{0});
      }
      return all_edges;
    }
    SmallSet key;
    key.size = static_cast<std::uint8_t>(s.anchors.size());
    for (std::size_t i = 0; i < s.anchors.size(); ++i) key.items[i] = image[s.anchors[i]];
    std::sort(key.items.begin(), key.items.begin() + key.size);
    auto& buf = buffers[depth];
    buf.clear();
    if (s.anchors.size() == r) {
      if (auto e = host.find_edge(key)) buf.push_back(*e);
      return buf;
    }
    if (s.anchors.size() + 1 == r) return host.neighborhood(key);
    Vertex pivot = key.items[0];
    for (std::size_t i = 1; i < key.size; ++i) {
      if (host.degree(key.items[i]) < host.degree(pivot)) pivot = key.items[i];
    }
    for (EdgeIndex e : host.incident(pivot)) {
      auto ev = host.edge(e);
      if (std::includes(ev.begin(), ev.end(), key.begin(), key.end())) buf.push_back(e);
    }
    return buf;
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == m) {
      visit(std::span<const EdgeIndex>(chosen));
      return;
    }
    const Step& s = steps_[depth];
    const std::size_t f = s.fresh.size();
    auto cands = candidates(depth);
    for (EdgeIndex g : cands) {
      auto gv = host.edge(g);
      std::array<Vertex, kMaxUniformity> free_buf{};
      std::size_t nfree = 0;
      bool ok = true;
      for (Vertex u : gv) {
        bool is_anchor = false;
        for (std::size_t a : s.anchors) {
          if (image[a] == u) {
            is_anchor = true;
            break;
          }
        }
        if (is_anchor) continue;
        if (used[u]) {
          ok = false;
          break;
        }
        if (nfree == f) {
          ok = false;
          break;
        }
        free_buf[nfree++] = u;
      }
      if (!ok || nfree != f) continue;
      auto free = std::span<Vertex>(free_buf.data(), f);
      chosen[s.pattern_edge] = g;
      // free is sorted (edges are sorted); walk all assignments.
      do {
        bool order_ok = true;
        for (std::size_t i = 0; i < f; ++i) {
          if (s.twin_prev[i] >= 0 && free[static_cast<std::size_t>(s.twin_prev[i])] > free[i]) {
            order_ok = false;
            break;
          }
        }
        if (!order_ok) continue;
        for (std::size_t i = 0; i < f; ++i) {
          image[s.fresh[i]] = free[i];
          used[free[i]] = 1;
        }
        self(self, depth + 1);
        for (std::size_t i = 0; i < f; ++i) {
          used[free[i]] = 0;
          image[s.fresh[i]] = kUnmapped;
        }
      } while (std::next_permutation(free.begin(), free.end()));
    }
  };
  recurse(recurse, 0);
}

std::uint64_t PatternMatcher::automorphisms() const {
  if (!ordered_automorphisms_) {
    std::uint64_t n = 0;
    search(pattern_, [&](std::span<const EdgeIndex>) { ++n; });
    ordered_automorphisms_ = n;
  }
  return *ordered_automorphisms_ * twin_symmetry_;
}

std::uint64_t PatternMatcher::count(const Hypergraph& host, std::uint64_t budget) const {
  automorphisms();
  const std::uint64_t per_copy = *ordered_automorphisms_;
  std::uint64_t embeddings = 0;
  const std::uint64_t limit =
      budget == kUnlimited || budget > kUnlimited / per_copy ? kUnlimited : budget * per_copy;
  try {
    search(host, [&](std::span<const EdgeIndex>) {
      if (++embeddings > limit) throw Stop{};
    });
  } catch (const Stop&) {
    throw BudgetExceeded("copy count exceeded budget of " + std::to_string(budget),
                         embeddings / per_copy);
  }
  return embeddings / per_copy;
}

std::vector<Copy> PatternMatcher::enumerate(const Hypergraph& host, std::uint64_t budget) const {
  std::unordered_set<Copy, CopyHash> seen;
  Copy key;
  try {
    search(host, [&](std::span<const EdgeIndex> images) {
      key.assign(images.begin(), images.end());
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second && seen.size() > budget) throw Stop{};
    });
  } catch (const Stop&) {
    throw BudgetExceeded("copy enumeration exceeded budget of " + std::to_string(budget),
                         seen.size() - 1);
  }
  std::vector<Copy> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Copy> PatternMatcher::find(const Hypergraph& host) const {
  std::optional<Copy> found;
  try {
    search(host, [&](std::span<const EdgeIndex> images) {
      found.emplace(images.begin(), images.end());
      std::sort(found->begin(), found->end());
      throw Stop{};
    });
  } catch (const Stop&) {
  }
  return found;
}

std::vector<std::uint64_t> PatternMatcher::copies_per_edge(const Hypergraph& host) const {
  automorphisms();
  std::vector<std::uint64_t> per(host.edge_count(), 0);
  search(host, [&](std::span<const EdgeIndex> images) {
    for (EdgeIndex e : images) ++per[e];
  });
  for (auto& x : per) x /= *ordered_automorphisms_;
  return per;
}

std::uint64_t count_copies(const Hypergraph& host, const Hypergraph& pattern, std::uint64_t budget) {
  return PatternMatcher(pattern).count(host, budget);
}

std::vector<Copy> enumerate_copies(const Hypergraph& host, const Hypergraph& pattern,
                                   std::uint64_t budget) {
  return PatternMatcher(pattern).enumerate(host, budget);
}

bool contains_copy(const Hypergraph& host, const Hypergraph& pattern) {
  return PatternMatcher(pattern).find(host).has_value();
}

bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.uniformity() != b.uniformity() || a.edge_count() != b.edge_count()) return false;
  if (a.covered_vertex_count() != b.covered_vertex_count()) return false;
  if (a.empty()) return true;
  // Equal edge and vertex counts: any edge-preserving injection is onto.
  return PatternMatcher(a).find(b).has_value();
}

bool is_copy_of(const Hypergraph& host, const Copy& edges, const Hypergraph& pattern) {
  return is_isomorphic(host.subgraph(edges), pattern);
}

bool edges_have_common_vertex(const Hypergraph& h) {
  if (h.empty()) return false;
  auto common = std::vector<Vertex>(h.edge(0).begin(), h.edge(0).end());
  for (EdgeIndex i = 1; i < h.edge_count() && !common.empty(); ++i) {
    std::vector<Vertex> next;
    auto e = h.edge(i);
    std::set_intersection(common.begin(), common.end(), e.begin(), e.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return !common.empty();
}

}  // namespace turan
