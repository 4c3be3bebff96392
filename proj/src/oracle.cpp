#include "turan/oracle.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace turan::oracle {

Rational r_density(const Hypergraph& h) {
  const std::size_t m = h.edge_count();
  if (m < 2 || m > 20) throw std::invalid_argument("oracle r_density needs 2..20 edges");
  const auto r = static_cast<std::int64_t>(h.uniformity());
  Rational best(0);
  bool any = false;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    const auto e = static_cast<std::int64_t>(std::popcount(mask));
    if (e < 2) continue;
    std::set<Vertex> vs;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1u) {
        for (Vertex v : h.edge(static_cast<EdgeIndex>(i))) vs.insert(v);
      }
    }
    Rational q(e - 1, static_cast<std::int64_t>(vs.size()) - r);
    if (!any || q > best) best = q;
    any = true;
  }
  return best;
}

std::vector<std::uint64_t> copy_masks(const Hypergraph& g, const Hypergraph& f) {
  if (g.edge_count() > 64) throw std::invalid_argument("oracle copy search needs at most 64 host edges");
  if (g.uniformity() != f.uniformity()) throw std::invalid_argument("uniformity mismatch");
  std::vector<Vertex> fv;
  for (EdgeIndex i = 0; i < f.edge_count(); ++i) {
    for (Vertex v : f.edge(i)) fv.push_back(v);
  }
  std::sort(fv.begin(), fv.end());
  fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
  std::vector<std::size_t> pos(f.vertex_count(), 0);
  for (std::size_t i = 0; i < fv.size(); ++i) pos[fv[i]] = i;

  std::set<std::uint64_t> found;
  if (fv.size() > g.vertex_count() || f.edge_count() == 0) return {};
  // Walk all injective maps via permutations of chosen host vertex subsets.
  std::vector<Vertex> image;
  for_each_combination(g.vertex_count(), fv.size(), [&](std::span<const std::size_t> chosen) {
    image.assign(chosen.begin(), chosen.end());
    do {
      std::uint64_t mask = 0;
      bool ok = true;
      for (EdgeIndex i = 0; i < f.edge_count() && ok; ++i) {
        std::vector<Vertex> e;
        for (Vertex v : f.edge(i)) e.push_back(image[pos[v]]);
        std::sort(e.begin(), e.end());
        auto idx = g.find_edge(SmallSet::from_sorted(e));
        if (!idx) {
          ok = false;
        } else {
          mask |= std::uint64_t{1} << *idx;
        }
      }
      if (ok) found.insert(mask);
    } while (std::next_permutation(image.begin(), image.end()));
  });
  return {found.begin(), found.end()};
}

std::uint64_t count_copies(const Hypergraph& g, const Hypergraph& f) { return copy_masks(g, f).size(); }

std::size_t exact_ex(const Hypergraph& g, const Hypergraph& f) {
  const std::size_t m = g.edge_count();
  if (m > 24) throw std::invalid_argument("oracle exact_ex needs at most 24 edges");
  const auto masks = copy_masks(g, f);
  std::size_t best = 0;
  for (std::uint32_t keep = 0; keep < (1u << m); ++keep) {
    const auto size = static_cast<std::size_t>(std::popcount(keep));
    if (size <= best) continue;
    bool free = true;
    for (std::uint64_t c : masks) {
      if ((c & keep) == c) {
        free = false;
        break;
      }
    }
    if (free) best = size;
  }
  return best;
}

bool progression_free(const std::vector<int>& xs) {
  std::set<int> s(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (s.count(2 * xs[j] - xs[i]) && 2 * xs[j] - xs[i] != xs[j]) return false;
      if (s.count(2 * xs[i] - xs[j]) && 2 * xs[i] - xs[j] != xs[i]) return false;
    }
  }
  return true;
}

std::size_t max_progression_free(int n) {
  if (n < 0 || n > 24) throw std::invalid_argument("oracle progression-free search needs 0 <= n <= 24");
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    std::vector<int> xs;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) xs.push_back(i + 1);
    }
    if (progression_free(xs)) best = size;
  }
  return best;
}

}  // namespace turan::oracle
