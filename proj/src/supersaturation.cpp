#include "turan/supersaturation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>
#include "turan/errors.hpp"
#include "turan/expansion.hpp"
#include "turan/rng.hpp"

namespace turan {

namespace {

constexpr Vertex kUnmapped = std::numeric_limits<Vertex>::max();

std::string set_str(const SmallSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size; ++i) os << (i ? "," : "") << s.items[i];
  os << '}';
  return os.str();
}

void require_shadow_order(const Hypergraph& h, const char* what) {
  if (h.uniformity() < 2) throw std::invalid_argument(std::string(what) + " needs uniformity >= 2");
}

// Deletes N(sigma) for the smallest sigma with d(sigma) <= threshold until
// no such shadow remains.
std::vector<PeelEvent> peel(const Hypergraph& h, std::size_t threshold, std::vector<char>& alive) {
  const auto k = static_cast<std::size_t>(h.uniformity() - 1);
  const auto& index = h.shadow_index();
  std::unordered_map<SmallSet, std::size_t, SmallSetHash> count;
  std::set<SmallSet> low;
  count.reserve(index.size());
  for (const auto& [s, es] : index) {
    count.emplace(s, es.size());
    if (es.size() <= threshold) low.insert(s);
  }
  alive.assign(h.edge_count(), 1);
  std::vector<PeelEvent> log;
  while (!low.empty()) {
    const SmallSet sigma = *low.begin();
    low.erase(low.begin());
    PeelEvent ev;
    ev.shadow = sigma;
    ev.codegree = count.at(sigma);
    for (EdgeIndex e : index.at(sigma)) {
      if (alive[e]) ev.edges.push_back(e);
    }
    for (EdgeIndex e : ev.edges) {
      alive[e] = 0;
      for_each_subset(h.edge(e), k, [&](const SmallSet& sub) {
        std::size_t& c = count.at(sub);
        --c;
        if (c == 0) {
          low.erase(sub);
        } else if (c <= threshold) {
          low.insert(sub);
        }
      });
    }
    log.push_back(std::move(ev));
  }
  return log;
}

std::vector<int> parts_of(const SmallSet& s, const VertexPartition& p) {
  std::vector<int> tau;
  for (Vertex v : s) tau.push_back(p.part_of(v));
  std::sort(tau.begin(), tau.end());
  return tau;
}

int dyadic_level(std::size_t d) { return static_cast<int>(std::bit_width(d)) - 1; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

template <typename Rows>
std::vector<Copy> edge_sets(const Rows& rows) {
  std::vector<Copy> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Copy c(row.begin(), row.end());
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void sort_unique(std::vector<std::vector<EdgeIndex>>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

// Labelled runs of the greedy embedding; rows are host edges per tree edge.
struct RunResult {
  std::vector<std::vector<EdgeIndex>> rows;
  std::uint64_t runs = 0;
  double sampled_fraction = 1.0;
  bool certified = true;
};

RunResult greedy_runs(const Hypergraph& h, const TightTreeWitness& tree, std::size_t t,
                      const GreedyOptions& options) {
  const int r = h.uniformity();
  if (tree.uniformity != r) {
    throw std::invalid_argument("tree uniformity " + std::to_string(tree.uniformity) +
                                " differs from host uniformity " + std::to_string(r));
  }
  validate_witness(tree);
  require_shadow_order(h, "greedy embedding");
  const std::size_t min_t = options.min_t ? options.min_t : 2 * tree.vertex_count();
  if (t < min_t || t == 0) {
    throw std::invalid_argument("t = " + std::to_string(t) + " is below the minimum " + std::to_string(min_t));
  }
  // Precondition: every (r-1)-shadow has codegree > t.
  std::optional<SmallSet> offending;
  std::size_t offending_degree = 0;
  for (const auto& [s, es] : h.shadow_index()) {
    if (es.size() <= t && (!offending || s < *offending)) {
      offending = s;
      offending_degree = es.size();
    }
  }
  if (offending) {
    throw ValidationError("shadow " + set_str(*offending) + " has codegree " + std::to_string(offending_degree) +
                          " <= t = " + std::to_string(t));
  }

  const TightTreeWitness ct = tree.compacted();
  const std::size_t l = ct.edge_count();
  const std::size_t v = ct.vertex_count();
  // Tree vertices of edge i other than the new one, for i >= 1.
  std::vector<std::vector<Vertex>> sigma(l);
  for (std::size_t i = 1; i < l; ++i) {
    for (Vertex x : ct.edges[i]) {
      if (x != ct.new_vertex[i]) sigma[i].push_back(x);
    }
  }

  RunResult result;
  std::unordered_set<Copy, CopyHash> seen;
  std::vector<Vertex> phi(v, kUnmapped);
  std::vector<char> used(h.vertex_count(), 0);
  std::vector<EdgeIndex> images(l, 0);
  std::vector<std::vector<std::size_t>> nbuf(l);

  auto sigma_image = [&](std::size_t i) {
    SmallSet s;
    s.size = static_cast<std::uint8_t>(sigma[i].size());
    for (std::size_t j = 0; j < sigma[i].size(); ++j) s.items[j] = phi[sigma[i][j]];
    std::sort(s.items.begin(), s.items.begin() + s.size);
    return s;
  };
  auto new_vertex_of = [&](EdgeIndex g, const SmallSet& s) {
    for (Vertex u : h.edge(g)) {
      if (!s.contains(u)) return u;
    }
    return kUnmapped;
  };
  // Candidate host edges for tree edge i given the current partial map.
  auto options_for = [&](std::size_t i, std::vector<EdgeIndex>& out) {
    out.clear();
    const SmallSet s = sigma_image(i);
    auto nbhd = h.neighborhood(s);
    const EdgeIndex parent_image = images[ct.parent[i]];
    auto it = std::lower_bound(nbhd.begin(), nbhd.end(), parent_image);
    const auto pos = static_cast<std::size_t>(it - nbhd.begin());
    near_regular_neighbors(nbhd.size(), t, pos, nbuf[i]);
    for (std::size_t q : nbuf[i]) {
      EdgeIndex g = nbhd[q];
      if (!used[new_vertex_of(g, s)]) out.push_back(g);
    }
  };
  auto emit = [&] {
    ++result.runs;
    if (seen.insert(images).second) result.rows.push_back(images);
  };
  auto place_first = [&](EdgeIndex g, std::span<const Vertex> order) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      phi[ct.edges[0][j]] = order[j];
      used[order[j]] = 1;
    }
    images[0] = g;
  };
  auto clear_first = [&](std::span<const Vertex> order) {
    for (std::size_t j = 0; j < order.size(); ++j) {
      used[order[j]] = 0;
      phi[ct.edges[0][j]] = kUnmapped;
    }
  };

  const std::uint64_t first_orders = options.first_edge_all_orders ? factorial(r) : 1;
  std::uint64_t upper = saturating_mul(h.edge_count(), first_orders);
  for (std::size_t i = 1; i < l; ++i) upper = saturating_mul(upper, t);
  const bool sample = options.samples > 0 || upper > options.run_budget;

  std::vector<std::vector<EdgeIndex>> cand(l);
  if (!sample) {
    auto step = [&](auto&& self, std::size_t i) -> void {
      if (i == l) {
        emit();
        return;
      }
      options_for(i, cand[i]);
      const auto choices = cand[i];
      const SmallSet s = sigma_image(i);
      for (EdgeIndex g : choices) {
        const Vertex u = new_vertex_of(g, s);
        phi[ct.new_vertex[i]] = u;
        used[u] = 1;
        images[i] = g;
        self(self, i + 1);
        used[u] = 0;
        phi[ct.new_vertex[i]] = kUnmapped;
      }
    };
    for (EdgeIndex g = 0; g < h.edge_count(); ++g) {
      std::vector<Vertex> order(h.edge(g).begin(), h.edge(g).end());
      do {
        place_first(g, order);
        step(step, 1);
        clear_first(order);
      } while (options.first_edge_all_orders && std::next_permutation(order.begin(), order.end()));
    }
  } else {
    const std::uint64_t samples = options.samples ? options.samples : options.run_budget;
    Rng rng(options.seed);
    std::uint64_t completed = 0;
    for (std::uint64_t s = 0; s < samples && !h.empty(); ++s) {
      const auto g = static_cast<EdgeIndex>(rng.below(h.edge_count()));
      std::vector<Vertex> order(h.edge(g).begin(), h.edge(g).end());
      if (options.first_edge_all_orders) rng.shuffle(std::span<Vertex>(order));
      place_first(g, order);
      std::vector<Vertex> placed;
      bool ok = true;
      for (std::size_t i = 1; i < l; ++i) {
        options_for(i, cand[i]);
        if (cand[i].empty()) {
          ok = false;
          break;
        }
        const EdgeIndex pick = cand[i][rng.below(cand[i].size())];
        const Vertex u = new_vertex_of(pick, sigma_image(i));
        phi[ct.new_vertex[i]] = u;
        used[u] = 1;
        placed.push_back(u);
        images[i] = pick;
      }
      if (ok) {
        emit();
        ++completed;
      }
      for (std::size_t i = 1; i <= placed.size(); ++i) phi[ct.new_vertex[i]] = kUnmapped;
      for (Vertex u : placed) used[u] = 0;
      clear_first(order);
    }
    result.runs = completed;
    result.certified = false;
    result.sampled_fraction = std::min(1.0, static_cast<double>(completed) / static_cast<double>(upper));
  }
  sort_unique(result.rows);
  return result;
}

std::vector<std::vector<EdgeIndex>> project_rows(const std::vector<std::vector<EdgeIndex>>& rows,
                                                 const std::vector<std::size_t>& positions,
                                                 const std::vector<EdgeIndex>* remap) {
  std::vector<std::vector<EdgeIndex>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<EdgeIndex> p;
    p.reserve(positions.size());
    for (std::size_t i : positions) p.push_back(remap ? (*remap)[row[i]] : row[i]);
    out.push_back(std::move(p));
  }
  sort_unique(out);
  return out;
}

struct BalancedContext {
  const TightTreeWitness& tree;
  const std::vector<std::size_t>& subset;
  int k;
  Vertex n;
  const BalancedOptions& options;
  std::vector<LevelTrace>& trace;
  std::uint64_t runs = 0;
  bool certified = true;
  double sampled_fraction = 1.0;
};

void absorb(BalancedContext& ctx, const RunResult& rr) {
  ctx.runs += rr.runs;
  ctx.certified = ctx.certified && rr.certified;
  ctx.sampled_fraction = std::min(ctx.sampled_fraction, rr.sampled_fraction);
}

// Labelled copies of S^(+r) in h (rows in subset order, indices into h).
std::vector<std::vector<EdgeIndex>> build_level(const Hypergraph& h, double t, std::uint64_t seed,
                                                BalancedContext& ctx) {
  const int r = h.uniformity();
  const int delta = r - ctx.k;
  const std::size_t slot = ctx.trace.size();
  ctx.trace.push_back({});
  LevelTrace tr;
  tr.uniformity = r;
  tr.t = t;
  tr.host_edges = h.edge_count();

  GreedyOptions gopt;
  gopt.min_t = 1;
  gopt.run_budget = ctx.options.run_budget;
  gopt.seed = derive_seed(seed, {0x67726565ULL});

  std::vector<std::vector<EdgeIndex>> rows;
  if (delta == 0) {
    tr.branch = "base";
    const auto half = static_cast<std::size_t>(std::floor(t / 2.0));
    tr.threshold = static_cast<double>(half);
    // floor(floor(t) / 2) == floor(t / 2), so the integer cleanup matches d <= t/2.
    CleanupResult clean = codegree_cleanup_detailed(h, static_cast<std::size_t>(std::floor(t)));
    tr.working_edges = clean.graph.edge_count();
    if (clean.graph.empty()) {
      throw ValidationError("codegree cleanup at uniformity " + std::to_string(r) + " removed every edge (t = " +
                            std::to_string(t) + ")");
    }
    if (half == 0) throw ValidationError("t = " + std::to_string(t) + " leaves no room for the greedy embedding");
    RunResult rr = greedy_runs(clean.graph, ctx.tree, half, gopt);
    absorb(ctx, rr);
    rows = project_rows(rr.rows, ctx.subset, &clean.kept);
  } else {
    const PartitionChoice choice =
        best_random_partition(h, ctx.options.partition_trials, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    const double logn = std::log2(static_cast<double>(ctx.n));
    const double a_real = std::pow(t, 1.0 / (delta + 1)) *
                          std::pow(static_cast<double>(ctx.n) / logn, static_cast<double>(delta) / (delta + 1));
    const auto threshold = static_cast<std::size_t>(std::floor(a_real));
    tr.threshold = a_real;
    tr.working_edges = choice.graph.edge_count();
    const CodegreePartition part = codegree_partition(choice.graph, choice.partition, threshold);
    tr.large_edges = part.large.edge_count();
    const double needed =
        ctx.options.case1_factor * static_cast<double>(choice.graph.edge_count()) / std::pow(logn, delta);
    if (!part.large.empty() && static_cast<double>(part.large.edge_count()) >= needed) {
      tr.branch = "case1";
      if (threshold == 0) throw ValidationError("codegree threshold A rounds to 0");
      const ExpandedTree et = expanded_tree(ctx.tree, ctx.subset, r);
      RunResult rr = greedy_runs(part.large, et.tree, threshold, gopt);
      absorb(ctx, rr);
      std::vector<EdgeIndex> to_host(part.large_edges.size());
      for (std::size_t i = 0; i < to_host.size(); ++i) to_host[i] = choice.kept[part.large_edges[i]];
      rows = project_rows(rr.rows, et.pattern_edges, &to_host);
    } else {
      tr.branch = "case2";
      const double bound = static_cast<double>(factorial(r)) / (4.0 * std::pow(static_cast<double>(r), r)) * t;
      const CodegreeClass* best = nullptr;
      for (const auto& c : part.classes) {
        if (std::ldexp(1.0, c.level) <= bound) continue;
        if (!best || c.edges.size() > best->edges.size()) best = &c;
      }
      if (!best) {
        throw ValidationError("no codegree class at uniformity " + std::to_string(r) +
                              " has 2^a above r!/(4 r^r) * t = " + std::to_string(bound));
      }
      tr.tau = best->tau;
      tr.level = best->level;
      int missing = 0;
      while (std::binary_search(best->tau.begin(), best->tau.end(), missing)) ++missing;
      const Hypergraph& cls = best->subgraph;
      std::vector<std::vector<Vertex>> shadow_edges;
      shadow_edges.reserve(cls.edge_count());
      for (EdgeIndex e = 0; e < cls.edge_count(); ++e) {
        std::vector<Vertex> s;
        for (Vertex u : cls.edge(e)) {
          if (choice.partition.part_of(u) != missing) s.push_back(u);
        }
        shadow_edges.push_back(std::move(s));
      }
      const Hypergraph g(r - 1, h.vertex_count(), shadow_edges);
      tr.shadow_edges = g.edge_count();
      const double t_next = static_cast<double>(g.edge_count()) / std::pow(static_cast<double>(ctx.n), r - 2);
      const auto lower = build_level(g, t_next, derive_seed(seed, {static_cast<std::uint64_t>(r), 1}), ctx);

      // Extend each lower copy: every (r-1)-edge picks a containing class
      // edge, completion vertices pairwise distinct.
      std::uint64_t work = 0;
      const std::size_t m = ctx.subset.size();
      std::vector<EdgeIndex> pick(m);
      std::vector<Vertex> completion(m);
      for (const auto& low : lower) {
        std::vector<std::span<const EdgeIndex>> cands(m);
        for (std::size_t i = 0; i < m; ++i) cands[i] = cls.neighborhood(g.edge_set(low[i]));
        std::uint64_t found = 0;
        auto extend = [&](auto&& self, std::size_t i) -> void {
          if (found >= ctx.options.max_extensions || work >= ctx.options.extension_budget) return;
          if (i == m) {
            std::vector<EdgeIndex> row(m);
            for (std::size_t j = 0; j < m; ++j) row[j] = choice.kept[best->edges[pick[j]]];
            rows.push_back(std::move(row));
            ++found;
            return;
          }
          for (EdgeIndex e : cands[i]) {
            ++work;
            Vertex w = kUnmapped;
            for (Vertex u : cls.edge(e)) {
              if (choice.partition.part_of(u) == missing) w = u;
            }
            if (std::find(completion.begin(), completion.begin() + static_cast<std::ptrdiff_t>(i), w) !=
                completion.begin() + static_cast<std::ptrdiff_t>(i)) {
              continue;
            }
            pick[i] = e;
            completion[i] = w;
            self(self, i + 1);
            if (found >= ctx.options.max_extensions) return;
          }
        };
        extend(extend, 0);
        if (found == 0) {
          ++tr.dropped;
        } else {
          tr.extended += found;
        }
      }
      if (work >= ctx.options.extension_budget) ctx.certified = false;
      sort_unique(rows);
    }
  }
  tr.copies = rows.size();
  ctx.trace[slot] = tr;
  return rows;
}

}  // namespace

void near_regular_neighbors(std::size_t n, std::size_t t, std::size_t i, std::vector<std::size_t>& out) {
  out.clear();
  const std::size_t half = t / 2;
  for (std::size_t d = 1; d <= half; ++d) {
    out.push_back((i + d) % n);
    out.push_back((i + n - d) % n);
  }
  if (t % 2 == 1) {
    if (n % 2 == 0) {
      out.push_back((i + n / 2) % n);
    } else if (i != n - 1) {
      const std::size_t m = (n - 1) / 2;
      out.push_back(i < m ? i + m : i - m);
    }
  }
}

AuxiliaryRegularGraph near_regular_graph(std::size_t n, std::size_t t) {
  if (t == 0 || t >= n) {
    throw std::invalid_argument("near-regular graph needs 0 < t < N (got N = " + std::to_string(n) +
                                ", t = " + std::to_string(t) + ")");
  }
  AuxiliaryRegularGraph g;
  g.vertex_count = n;
  g.target_degree = t;
  g.adjacency.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    near_regular_neighbors(n, t, i, g.adjacency[i]);
    std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
  }
  return g;
}

CleanupResult codegree_cleanup_detailed(const Hypergraph& h, std::size_t t) {
  require_shadow_order(h, "codegree cleanup");
  std::vector<char> alive;
  CleanupResult res{Hypergraph(h.uniformity(), h.vertex_count()), {}, peel(h, t / 2, alive)};
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    if (alive[e]) res.kept.push_back(e);
  }
  res.graph = h.subgraph(res.kept);
  return res;
}

Hypergraph codegree_cleanup(const Hypergraph& h, std::size_t t) { return codegree_cleanup_detailed(h, t).graph; }

CodegreePartition codegree_partition(const Hypergraph& h, const VertexPartition& p, std::size_t threshold) {
  require_shadow_order(h, "codegree partition");
  if (!is_partite(h, p)) throw std::invalid_argument("hypergraph is not partite with respect to the partition");
  CodegreePartition out{threshold, Hypergraph(h.uniformity(), h.vertex_count()), {}, {}, {}};
  std::vector<char> alive;
  out.log = peel(h, threshold, alive);
  std::map<std::pair<std::vector<int>, int>, std::vector<EdgeIndex>> buckets;
  for (const auto& ev : out.log) {
    auto& b = buckets[{parts_of(ev.shadow, p), dyadic_level(ev.codegree)}];
    b.insert(b.end(), ev.edges.begin(), ev.edges.end());
  }
  for (auto& [key, edges] : buckets) {
    std::sort(edges.begin(), edges.end());
    CodegreeClass c{key.first, key.second, edges, h.subgraph(edges)};
    out.classes.push_back(std::move(c));
  }
  for (EdgeIndex e = 0; e < h.edge_count(); ++e) {
    if (alive[e]) out.large_edges.push_back(e);
  }
  out.large = h.subgraph(out.large_edges);
  return out;
}

std::optional<std::string> verify_codegree_partition(const Hypergraph& h, const VertexPartition& p,
                                                     const CodegreePartition& part) {
  const auto& index = h.shadow_index();
  const std::size_t m = h.edge_count();
  std::vector<char> alive(m, 1);
  std::vector<int> owner(m, -1);  // class index, or -2 for large
  std::vector<int> seen(m, 0);
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    for (EdgeIndex e : part.classes[c].edges) {
      if (e >= m) return "class edge index out of range";
      owner[e] = static_cast<int>(c);
      ++seen[e];
    }
  }
  for (EdgeIndex e : part.large_edges) {
    if (e >= m) return "large edge index out of range";
    owner[e] = -2;
    ++seen[e];
  }
  for (EdgeIndex e = 0; e < m; ++e) {
    if (seen[e] != 1) return "edge " + std::to_string(e) + " appears " + std::to_string(seen[e]) + " times";
  }
  for (std::size_t step = 0; step < part.log.size(); ++step) {
    const auto& ev = part.log[step];
    auto it = index.find(ev.shadow);
    if (it == index.end()) return "step " + std::to_string(step) + ": " + set_str(ev.shadow) + " is not a shadow";
    std::vector<EdgeIndex> live;
    for (EdgeIndex e : it->second) {
      if (alive[e]) live.push_back(e);
    }
    if (live != ev.edges || live.size() != ev.codegree) {
      return "step " + std::to_string(step) + ": recorded neighbourhood of " + set_str(ev.shadow) +
             " does not match the replay";
    }
    if (ev.codegree > part.threshold) return "step " + std::to_string(step) + ": codegree above threshold";
    const auto tau = parts_of(ev.shadow, p);
    const int level = dyadic_level(ev.codegree);
    for (EdgeIndex e : live) {
      alive[e] = 0;
      if (owner[e] < 0) return "edge " + std::to_string(e) + " was peeled but is in the large part";
      const auto& c = part.classes[static_cast<std::size_t>(owner[e])];
      if (c.tau != tau || c.level != level) {
        return "edge " + std::to_string(e) + " is in the wrong class for codegree " + std::to_string(ev.codegree);
      }
      if ((std::size_t{1} << c.level) > ev.codegree || ev.codegree >= (std::size_t{1} << (c.level + 1))) {
        return "edge " + std::to_string(e) + " class level does not bracket its codegree";
      }
    }
  }
  for (EdgeIndex e = 0; e < m; ++e) {
    if (alive[e] != (owner[e] == -2)) return "edge " + std::to_string(e) + " survives the replay inconsistently";
  }
  for (const auto& [s, es] : part.large.shadow_index()) {
    if (es.size() <= part.threshold) return "large part keeps shadow " + set_str(s) + " of low codegree";
  }
  return std::nullopt;
}

CopyCollection greedy_tree_copies(const Hypergraph& h, const TightTreeWitness& tree, std::size_t t,
                                  const GreedyOptions& options) {
  RunResult rr = greedy_runs(h, tree, t, options);
  CopyCollection c;
  c.host = std::make_shared<const Hypergraph>(h);
  c.pattern = tree.compacted().to_hypergraph();
  c.copies = edge_sets(rr.rows);
  c.labelled = std::move(rr.rows);
  c.sampled_fraction = rr.sampled_fraction;
  c.certified = rr.certified;
  c.runs = rr.runs;
  c.t = t;
  c.seed = options.seed;
  return c;
}

CopyCollection restrict_to_pattern(const CopyCollection& c, const TightTreeWitness& tree,
                                   const std::vector<std::size_t>& subset) {
  if (!is_spanning(tree, subset)) throw std::invalid_argument("edge subset does not span the tree");
  if (c.labelled.empty() && !c.copies.empty()) {
    throw std::invalid_argument("collection carries no labelled copies to restrict");
  }
  for (std::size_t i : subset) {
    if (i >= tree.edge_count()) throw std::invalid_argument("subset position out of range");
  }
  CopyCollection out = c;
  out.pattern = tree_subgraph(tree, subset);
  out.labelled = project_rows(c.labelled, subset, nullptr);
  out.copies = edge_sets(out.labelled);
  return out;
}

std::uint64_t delta_j(const CopyCollection& c, std::size_t j) {
  if (j == 0 || j > c.pattern.edge_count()) {
    throw std::invalid_argument("j = " + std::to_string(j) + " outside [1, " +
                                std::to_string(c.pattern.edge_count()) + "]");
  }
  std::unordered_map<Copy, std::uint64_t, CopyHash> count;
  std::uint64_t best = 0;
  Copy key(j);
  for (const auto& copy : c.copies) {
    for_each_combination(copy.size(), j, [&](std::span<const std::size_t> idx) {
      for (std::size_t i = 0; i < j; ++i) key[i] = copy[idx[i]];
      best = std::max(best, ++count[key]);
    });
  }
  return best;
}

CopyCollection balanced_collection(const Hypergraph& h, const TightTreeWitness& tree,
                                   const std::vector<std::size_t>& subset, int r, double t, std::uint64_t seed,
                                   const BalancedOptions& options) {
  validate_witness(tree);
  const int k = tree.uniformity;
  if (r < k) throw std::invalid_argument("target uniformity below tree uniformity");
  if (h.uniformity() != r) throw std::invalid_argument("host uniformity differs from r");
  if (!is_spanning(tree, subset)) throw std::invalid_argument("edge subset does not span the tree");
  const double min_t = options.min_t ? static_cast<double>(options.min_t) : 4.0 * tree.vertex_count();
  if (t < min_t) {
    throw std::invalid_argument("t = " + std::to_string(t) + " is below the minimum " + std::to_string(min_t));
  }
  std::vector<LevelTrace> trace;
  BalancedContext ctx{tree, subset, k, h.vertex_count(), options, trace};
  auto rows = build_level(h, t, seed, ctx);

  CopyCollection c;
  c.host = std::make_shared<const Hypergraph>(h);
  c.pattern = expand(tree_subgraph(tree, subset), r).graph;
  c.copies = edge_sets(rows);
  c.labelled = std::move(rows);
  c.sampled_fraction = ctx.sampled_fraction;
  c.certified = ctx.certified;
  c.runs = ctx.runs;
  c.t = static_cast<std::size_t>(t);
  c.seed = seed;
  c.trace = std::move(trace);
  return c;
}

void write_collection(std::ostream& out, const CopyCollection& c) {
  nlohmann::json header;
  header["type"] = "header";
  header["pattern"] = {{"uniformity", c.pattern.uniformity()},
                       {"vertices", c.pattern.vertex_count()},
                       {"edges", c.pattern.edge_list()}};
  header["copies"] = c.copies.size();
  header["t"] = c.t;
  header["seed"] = c.seed;
  header["runs"] = c.runs;
  header["sampled_fraction"] = c.sampled_fraction;
  header["certified"] = c.certified;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& tr : c.trace) {
    trace.push_back({{"uniformity", tr.uniformity},
                     {"branch", tr.branch},
                     {"t", tr.t},
                     {"threshold", tr.threshold},
                     {"host_edges", tr.host_edges},
                     {"working_edges", tr.working_edges},
                     {"large_edges", tr.large_edges},
                     {"tau", tr.tau},
                     {"level", tr.level},
                     {"shadow_edges", tr.shadow_edges},
                     {"extended", tr.extended},
                     {"dropped", tr.dropped},
                     {"copies", tr.copies}});
  }
  header["trace"] = std::move(trace);
  out << header.dump() << '\n';
  for (const auto& copy : c.copies) out << nlohmann::json(copy).dump() << '\n';
}

}  // namespace turan
