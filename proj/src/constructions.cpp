#include "turan/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "turan/errors.hpp"
#include "turan/patterns.hpp"
#include "turan/rng.hpp"

namespace turan {

bool is_progression_free(const std::vector<int>& sorted) {
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const int z = 2 * sorted[j] - sorted[i];
      if (std::binary_search(sorted.begin() + static_cast<std::ptrdiff_t>(j) + 1, sorted.end(), z)) return false;
    }
  }
  return true;
}

namespace {

// Maximum progression-free subset of [1, n], using the optimum for every
// shorter prefix length as the bound on what the remaining suffix can add.
std::vector<int> exhaustive_behrend(int n) {
  std::vector<int> best_size(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> best_set;
  for (int len = 1; len <= n; ++len) {
    std::vector<int> chosen, found;
    std::vector<char> blocked(static_cast<std::size_t>(2 * len + 2), 0);
    int record = best_size[static_cast<std::size_t>(len) - 1];
    // Only strictly larger sets than the optimum for len - 1 are of interest.
    std::function<void(int)> dfs = [&](int next) {
      const int size = static_cast<int>(chosen.size());
      if (size > record) {
        record = size;
        found = chosen;
      }
      if (next > len) return;
      const int left = len - next + 1;
      const int cap = left < len ? best_size[static_cast<std::size_t>(left)] : best_size[static_cast<std::size_t>(len) - 1] + 1;
      if (size + cap <= record) return;
      if (!blocked[static_cast<std::size_t>(next)]) {
        std::vector<int> newly;
        for (int x : chosen) {
          const int z = 2 * next - x;
          if (z <= len && !blocked[static_cast<std::size_t>(z)]) {
            blocked[static_cast<std::size_t>(z)] = 1;
            newly.push_back(z);
          }
        }
        chosen.push_back(next);
        dfs(next + 1);
        chosen.pop_back();
        for (int z : newly) blocked[static_cast<std::size_t>(z)] = 0;
      }
      dfs(next + 1);
    };
    dfs(1);
    if (found.empty()) {
      best_size[static_cast<std::size_t>(len)] = best_size[static_cast<std::size_t>(len) - 1];
    } else {
      best_size[static_cast<std::size_t>(len)] = static_cast<int>(found.size());
      best_set = found;
    }
  }
  return best_set;
}

std::vector<int> constructive_behrend(int n) {
  std::vector<int> best{1};
  for (int b = 2; 2 * b - 1 <= std::max(n - 1, 3); ++b) {
    const int base = 2 * b - 1;
    std::map<long long, std::vector<int>> spheres;
    for (int v = 0; v < n; ++v) {
      long long norm = 0;
      bool ok = true;
      for (int rest = v; rest > 0; rest /= base) {
        const int d = rest % base;
        if (d >= b) {
          ok = false;
          break;
        }
        norm += static_cast<long long>(d) * d;
      }
      if (ok) spheres[norm].push_back(v + 1);
    }
    for (auto& [norm, members] : spheres) {
      if (members.size() > best.size()) best = members;
    }
  }
  return best;
}

}  // namespace

ProgressionFreeSet behrend_set(int n, BehrendMode mode) {
  if (n < 1) throw std::invalid_argument("behrend_set needs N >= 1");
  ProgressionFreeSet out;
  out.ambient = n;
  if (mode == BehrendMode::kExhaustive) {
    if (n > kExhaustiveBehrendCap) {
      throw std::invalid_argument("exhaustive progression-free search is capped at N = " +
                                  std::to_string(kExhaustiveBehrendCap));
    }
    out.elements = exhaustive_behrend(n);
  } else {
    out.elements = constructive_behrend(n);
  }
  if (!is_progression_free(out.elements)) throw ValidationError("progression-free set failed its own check");
  return out;
}

Hypergraph star_witness(const Hypergraph& g, Vertex v) {
  if (v >= g.vertex_count()) throw std::out_of_range("star centre out of range");
  std::vector<std::vector<Vertex>> edges;
  for (EdgeIndex e : g.incident(v)) edges.emplace_back(g.edge(e).begin(), g.edge(e).end());
  return Hypergraph(g.uniformity(), g.vertex_count(), edges);
}

PruneResult delete_edge_per_copy(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                                 std::uint64_t budget) {
  PatternMatcher matcher(pattern);
  auto copies = matcher.enumerate(g, budget);
  PruneResult out;
  out.copies = copies.size();
  Rng rng(seed);
  rng.shuffle(std::span<Copy>(copies));
  std::vector<char> removed(g.edge_count(), 0);
  std::vector<EdgeIndex> gone;
  for (const auto& c : copies) {
    if (std::any_of(c.begin(), c.end(), [&](EdgeIndex e) { return removed[e]; })) continue;
    const EdgeIndex victim = c[rng.below(c.size())];
    removed[victim] = 1;
    gone.push_back(victim);
  }
  std::sort(gone.begin(), gone.end());
  out.deleted = gone.size();
  out.witness = remove_edges(g, gone);
  if (auto left = matcher.find(out.witness)) {
    throw ValidationError("pruned witness still contains a copy");
  }
  return out;
}

Hypergraph random_deletion_witness(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                                   std::uint64_t budget) {
  return delete_edge_per_copy(g, pattern, seed, budget).witness;
}

Vertex rs_vertex_count(std::size_t m, int r) {
  return static_cast<Vertex>(m * static_cast<std::size_t>(r) * static_cast<std::size_t>(r + 1) / 2);
}

Hypergraph rs_hypergraph(std::size_t m, int r, const ProgressionFreeSet& a) {
  if (r < 3 || r > static_cast<int>(kMaxUniformity)) throw std::invalid_argument("rs_hypergraph needs 3 <= r <= 8");
  for (int x : a.elements) {
    if (x < 1 || static_cast<std::size_t>(x) > m) throw std::invalid_argument("progression-free set must lie in [1, m]");
  }
  if (!is_progression_free(a.elements)) throw std::invalid_argument("set is not progression-free");
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(m * a.elements.size());
  for (std::size_t x = 1; x <= m; ++x) {
    for (int step : a.elements) {
      std::vector<Vertex> e;
      for (int i = 1; i <= r; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const std::size_t offset = m * ii * (ii - 1) / 2;
        e.push_back(static_cast<Vertex>(offset + x + (ii - 1) * static_cast<std::size_t>(step) - 1));
      }
      edges.push_back(std::move(e));
    }
  }
  Hypergraph h(r, rs_vertex_count(m, r), edges);
  auto cert = validate_gj(h, 2);
  if (!cert.ok) throw ValidationError("rs_hypergraph failed validation: " + cert.violation);
  return h;
}

GjCertificate validate_gj(const Hypergraph& h, int k) {
  if (k < 1 || k >= h.uniformity()) throw std::invalid_argument("validate_gj needs 1 <= k < r");
  GjCertificate cert;
  cert.edges = h.edge_count();
  // (a) a k-set in two edges is exactly an intersection of size >= k.
  std::unordered_map<SmallSet, EdgeIndex, SmallSetHash> owner;
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    bool clash = false;
    for_each_subset(e, static_cast<std::size_t>(k), [&](const SmallSet& s) {
      if (clash) return;
      auto [it, fresh] = owner.emplace(s, i);
      if (!fresh) {
        clash = true;
        cert.ok = false;
        cert.witness = {it->second, i};
      }
    });
    if (clash) {
      auto a = h.edge(cert.witness[0]), b = h.edge(cert.witness[1]);
      std::vector<Vertex> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      cert.violation = "edges " + std::to_string(cert.witness[0]) + " and " + std::to_string(cert.witness[1]) +
                       " share " + std::to_string(common.size()) + " vertices";
      return cert;
    }
  }
  // (b) forbidden simplex expansion.
  if (auto c = PatternMatcher(clique_expansion(k + 1, h.uniformity()).graph).find(h)) {
    cert.ok = false;
    cert.witness = *c;
    cert.violation = "contains a copy of K_" + std::to_string(k + 1) + "^" + std::to_string(k) + "(+" +
                     std::to_string(h.uniformity()) + ")";
  }
  return cert;
}

BlowupMap blowup(const Hypergraph& base, Vertex n) {
  const Vertex m = base.vertex_count();
  if (m == 0 || n < m) throw std::invalid_argument("blowup needs n >= v(base) > 0");
  BlowupMap b;
  b.base = base;
  b.part_sizes.resize(m);
  b.part_start.resize(m);
  b.f.resize(n);
  Vertex next = 0;
  for (Vertex w = 0; w < m; ++w) {
    b.part_sizes[w] = n / m + (w < n % m ? 1 : 0);
    b.part_start[w] = next;
    for (std::size_t i = 0; i < b.part_sizes[w]; ++i) b.f[next + i] = w;
    next += static_cast<Vertex>(b.part_sizes[w]);
  }
  const auto r = static_cast<std::size_t>(base.uniformity());
  std::vector<std::vector<Vertex>> edges;
  std::vector<Vertex> e(r);
  for (EdgeIndex i = 0; i < base.edge_count(); ++i) {
    auto be = base.edge(i);
    std::vector<std::size_t> digit(r, 0);
    while (true) {
      for (std::size_t j = 0; j < r; ++j) e[j] = b.part_start[be[j]] + static_cast<Vertex>(digit[j]);
      edges.push_back(e);
      std::size_t j = 0;
      while (j < r && ++digit[j] == b.part_sizes[be[j]]) digit[j++] = 0;
      if (j == r) break;
    }
  }
  b.blown = Hypergraph(base.uniformity(), n, edges);
  return b;
}

Gj2Certificate gj2_check(const BlowupMap& b, int k, std::uint64_t budget) {
  auto base_cert = validate_gj(b.base, k);
  if (!base_cert.ok) throw std::invalid_argument("gj2_check precondition: base fails validation (" + base_cert.violation + ")");
  Gj2Certificate cert;
  PatternMatcher matcher(clique_expansion(k + 1, b.blown.uniformity()).graph);
  auto copies = matcher.enumerate(b.blown, budget);
  cert.copies = copies.size();
  auto image = [&](EdgeIndex e) {
    std::vector<Vertex> out;
    for (Vertex v : b.blown.edge(e)) out.push_back(b.f[v]);
    std::sort(out.begin(), out.end());
    return out;
  };
  for (const auto& c : copies) {
    const auto first = image(c.front());
    for (EdgeIndex e : c) {
      if (image(e) != first) {
        cert.ok = false;
        cert.witness = c;
        cert.violation = "copy spans more than one base edge";
        return cert;
      }
    }
  }
  return cert;
}

PruneOutcome intersect_and_prune(const BlowupMap& b, double p, int k, std::uint64_t seed, std::uint64_t budget) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  Rng rng(derive_seed(seed, {0x73616d70ULL}));
  auto kept = bernoulli_indices(b.blown.edge_count(), p, rng);
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(kept.size());
  for (auto i : kept) {
    auto e = b.blown.edge(static_cast<EdgeIndex>(i));
    edges.emplace_back(e.begin(), e.end());
  }
  Hypergraph sample(b.blown.uniformity(), b.blown.vertex_count(), edges);
  PruneOutcome out;
  out.x = sample.edge_count();
  auto pruned = delete_edge_per_copy(sample, clique_expansion(k, b.blown.uniformity()).graph,
                                     derive_seed(seed, {0x70727565ULL}), budget);
  out.y = pruned.copies;
  out.witness = std::move(pruned.witness);
  return out;
}

std::size_t simplex_recipe_m(Vertex n, double p, int r, int k) {
  if (n < 2 || !(p > 0.0 && p <= 1.0)) throw std::invalid_argument("recipe needs n >= 2 and 0 < p <= 1");
  const double d = static_cast<double>((r - k + 1) * (k - 1) + 1);
  const double ln = std::log(static_cast<double>(n));
  return static_cast<std::size_t>(std::llround(std::pow(p, (k - 1) / d) * n * std::exp(std::sqrt(ln))));
}

GjExperiment gj_experiment(const GjExperimentConfig& cfg) {
  if (cfg.k != 3) throw std::invalid_argument("the simplex experiment is implemented for k = 3 only");
  GjExperiment out;
  out.recipe_m = simplex_recipe_m(cfg.n, cfg.p, cfg.r, cfg.k);
  const std::size_t per = static_cast<std::size_t>(cfg.r) * static_cast<std::size_t>(cfg.r + 1) / 2;
  out.base_m = std::min<std::size_t>(out.recipe_m, cfg.n) / per;
  if (out.base_m == 0) throw ValidationError("recipe leaves no room for a base hypergraph");
  const int ap_range = static_cast<int>(out.base_m);
  auto a = behrend_set(ap_range, ap_range <= kExhaustiveBehrendCap ? BehrendMode::kExhaustive : BehrendMode::kConstructive);
  out.progression_size = a.elements.size();
  auto base = rs_hypergraph(out.base_m, cfg.r, a);
  out.base_vertices = base.vertex_count();
  out.base_edges = base.edge_count();
  auto b = blowup(base, cfg.n);
  out.blown_edges = b.blown.edge_count();
  const auto pattern = clique_expansion(cfg.k, cfg.r).graph;
  for (std::size_t i = 0; i < cfg.runs; ++i) {
    GjExperimentRun run;
    run.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(i)});
    auto res = intersect_and_prune(b, cfg.p, cfg.k, run.seed, cfg.budget);
    run.x = res.x;
    run.y = res.y;
    run.witness_edges = res.witness.edge_count();
    run.certified = !contains_copy(res.witness, pattern) && run.witness_edges + run.y >= run.x;
    out.runs.push_back(run);
  }
  return out;
}

}  // namespace turan
