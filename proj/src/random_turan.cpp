#include "turan/random_turan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/patterns.hpp"
#include "turan/rng.hpp"

namespace turan {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

std::vector<Vertex> colex_unrank(std::uint64_t rank, int k) {
  std::vector<Vertex> out(static_cast<std::size_t>(k));
  for (int i = k; i >= 1; --i) {
    // Largest c with C(c, i) <= rank.
    std::uint64_t lo = static_cast<std::uint64_t>(i) - 1, hi = lo + 1;
    while (binomial(hi, static_cast<std::uint64_t>(i)) <= rank) hi *= 2;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (binomial(mid, static_cast<std::uint64_t>(i)) <= rank) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out[static_cast<std::size_t>(i) - 1] = static_cast<Vertex>(lo);
    rank -= binomial(lo, static_cast<std::uint64_t>(i));
  }
  return out;
}

Hypergraph sample_gnp(Vertex n, int r, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (r < 1 || r > static_cast<int>(kMaxUniformity)) throw std::invalid_argument("uniformity must lie in 1..8");
  Rng rng(seed);
  const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(r));
  std::vector<std::vector<Vertex>> edges;
  if (p >= 1.0) {
    for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
      edges.emplace_back(idx.begin(), idx.end());
    });
  } else {
    for (auto rank : bernoulli_indices(total, p, rng)) edges.push_back(colex_unrank(rank, r));
  }
  return Hypergraph(r, n, edges);
}

namespace {

struct HittingSearch {
  const std::vector<Copy>& copies;
  std::vector<std::vector<std::uint32_t>> edge_copies;
  std::vector<int> hit;            // removed edges per copy
  std::vector<char> removed, fixed;
  std::vector<EdgeIndex> current, best;
  std::uint64_t nodes = 0, budget = 0;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  struct OutOfBudget {};

  HittingSearch(const std::vector<Copy>& cs, std::size_t edge_count, std::uint64_t node_budget)
      : copies(cs),
        edge_copies(edge_count),
        hit(cs.size(), 0),
        removed(edge_count, 0),
        fixed(edge_count, 0),
        budget(node_budget),
        stamp(edge_count, 0) {
    for (std::uint32_t c = 0; c < cs.size(); ++c) {
      for (EdgeIndex e : cs[c]) edge_copies[e].push_back(c);
    }
  }

  void remove(EdgeIndex e, int sign) {
    removed[e] = sign > 0;
    for (auto c : edge_copies[e]) hit[c] += sign;
  }

  // Copies with pairwise disjoint free edges each need their own deletion.
  std::size_t packing_bound() {
    ++epoch;
    std::size_t count = 0;
    for (std::uint32_t c = 0; c < copies.size(); ++c) {
      if (hit[c]) continue;
      bool clash = false;
      for (EdgeIndex e : copies[c]) clash = clash || (!fixed[e] && stamp[e] == epoch);
      if (clash) continue;
      for (EdgeIndex e : copies[c]) {
        if (!fixed[e]) stamp[e] = epoch;
      }
      ++count;
    }
    return count;
  }

  void greedy_start() {
    std::vector<std::size_t> unhit_count(removed.size(), 0);
    for (std::size_t e = 0; e < removed.size(); ++e) unhit_count[e] = edge_copies[e].size();
    std::size_t left = copies.size();
    while (left > 0) {
      const auto e = static_cast<EdgeIndex>(std::max_element(unhit_count.begin(), unhit_count.end()) - unhit_count.begin());
      for (auto c : edge_copies[e]) {
        if (hit[c]++ == 0) {
          --left;
          for (EdgeIndex f : copies[c]) --unhit_count[f];
        }
      }
      removed[e] = 1;
      best.push_back(e);
    }
    std::fill(hit.begin(), hit.end(), 0);
    std::fill(removed.begin(), removed.end(), 0);
  }

  void dfs() {
    if (++nodes > budget) throw OutOfBudget{};
    std::size_t pick = copies.size(), pick_free = SIZE_MAX;
    for (std::size_t c = 0; c < copies.size(); ++c) {
      if (hit[c]) continue;
      std::size_t free = 0;
      for (EdgeIndex e : copies[c]) free += !fixed[e];
      if (free < pick_free) {
        pick = c;
        pick_free = free;
      }
    }
    if (pick == copies.size()) {
      if (current.size() < best.size()) best = current;
      return;
    }
    if (pick_free == 0) return;
    if (current.size() + packing_bound() >= best.size()) return;
    std::vector<EdgeIndex> pinned;
    for (EdgeIndex e : copies[pick]) {
      if (fixed[e]) continue;
      remove(e, 1);
      current.push_back(e);
      dfs();
      current.pop_back();
      remove(e, -1);
      fixed[e] = 1;
      pinned.push_back(e);
      if (current.size() + 1 >= best.size()) break;
    }
    for (EdgeIndex e : pinned) fixed[e] = 0;
  }
};

}  // namespace

ExResult exact_ex(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t node_budget,
                  std::uint64_t copy_budget) {
  return exact_ex_from_copies(PatternMatcher(pattern).enumerate(g, copy_budget), g.edge_count(), node_budget);
}

ExResult exact_ex_from_copies(const std::vector<Copy>& copies, std::size_t edge_count, std::uint64_t node_budget) {
  ExResult out;
  out.copies = copies.size();
  HittingSearch search(copies, edge_count, node_budget);
  search.greedy_start();
  const std::size_t root_bound = search.packing_bound();
  try {
    search.dfs();
    out.exact = true;
  } catch (const HittingSearch::OutOfBudget&) {
    out.exact = false;
  }
  out.nodes = std::min(search.nodes, node_budget);
  out.removed = search.best;
  std::sort(out.removed.begin(), out.removed.end());
  out.lower = edge_count - search.best.size();
  out.upper = out.exact ? out.lower : edge_count - root_bound;
  return out;
}

Hypergraph greedy_ex_lower(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                           std::uint64_t copy_budget) {
  return random_deletion_witness(g, pattern, seed, copy_budget);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::kTightTree:
      return "tight-tree";
    case Family::kClique:
      return "clique";
    case Family::kCustom:
      return "custom";
  }
  return "custom";
}

Family parse_family(const std::string& name) {
  if (name == "tight-tree") return Family::kTightTree;
  if (name == "clique") return Family::kClique;
  if (name == "custom") return Family::kCustom;
  throw std::invalid_argument("unknown family '" + name + "' (expected tight-tree, clique or custom)");
}

Rational theoretical_exponent(Family family, int r, int k, const Rational& x) {
  if (x <= Rational(0) || x > Rational(r)) throw std::invalid_argument("x must lie in (0, r]");
  if (k < 2 || k > r) throw std::invalid_argument("need 2 <= k <= r");
  const Rational one(1);
  if (family == Family::kTightTree) {
    if (x < Rational(k - 1)) return x;
    if (x <= Rational(k)) return Rational(k - 1);
    return x - one;
  }
  if (family == Family::kClique) {
    if (k < 3) throw std::invalid_argument("the clique family needs k >= 3");
    const int delta = r - k;
    const Rational low = Rational(k) - Rational(k, k - 1);
    const Rational high = Rational(k) - Rational(delta, (delta + 1) * (k - 1));
    if (x < low) return x;
    if (x <= high) return (x - Rational(r)) / Rational((delta + 1) * (k - 1) + 1) + Rational(k - 1);
    return x - one;
  }
  throw std::invalid_argument("no closed-form exponent for a custom pattern");
}

Rational prior_claim_exponent(int r, const Rational& x) {
  if (x <= Rational(0) || x > Rational(r)) throw std::invalid_argument("x must lie in (0, r]");
  if (x < Rational(r) - Rational(3, 2)) return x;
  return std::max((x - Rational(r)) / Rational(2 * r - 3) + Rational(2), x - Rational(1));
}

Hypergraph family_pattern(Family family, int r, int k) {
  if (family == Family::kTightTree) return expand(tight_path(k, k + 1).to_hypergraph(), r).graph;
  if (family == Family::kClique) return clique_expansion(k, r).graph;
  throw std::invalid_argument("a custom family needs an explicit pattern");
}

std::string estimator_name(Estimator e) {
  switch (e) {
    case Estimator::kExact:
      return "exact";
    case Estimator::kGreedy:
      return "greedy";
    case Estimator::kAuto:
      return "auto";
  }
  return "auto";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "exact") return Estimator::kExact;
  if (name == "greedy") return Estimator::kGreedy;
  if (name == "auto") return Estimator::kAuto;
  throw std::invalid_argument("unknown estimator '" + name + "' (expected exact, greedy or auto)");
}

Hypergraph sweep_pattern(const SweepConfig& cfg) {
  if (cfg.family == Family::kCustom) {
    auto named = parse_pattern(cfg.pattern);
    if (named.graph.uniformity() != cfg.r) throw std::invalid_argument("pattern uniformity differs from r");
    return named.graph;
  }
  return family_pattern(cfg.family, cfg.r, cfg.k);
}

namespace {

void run_cell(const SweepConfig& cfg, const Hypergraph& pattern, bool star_safe, SweepRow& row) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto g = sample_gnp(row.n, cfg.r, row.p, derive_seed(row.seed, {0}));
    row.edges = g.edge_count();
    std::size_t best = 0;
    std::string source = "none";
    bool exhausted = false;
    auto take = [&](std::size_t value, const char* name) {
      if (value > best || source == "none") {
        best = value;
        source = name;
      }
    };
    bool done = false;
    if (cfg.estimator != Estimator::kGreedy) {
      try {
        const auto copies = PatternMatcher(pattern).enumerate(g, cfg.copy_budget);
        const auto cap = std::max<std::uint64_t>(1, cfg.work_budget / std::max<std::size_t>(1, copies.size()));
        auto ex = exact_ex_from_copies(copies, g.edge_count(), std::min(cfg.node_budget, cap));
        if (ex.exact) row.exact = ex.lower;
        take(ex.lower, ex.exact ? "exact" : "bnb-partial");
        done = ex.exact;
      } catch (const BudgetExceeded&) {
        exhausted = true;
      }
    }
    if (!done && (cfg.estimator != Estimator::kExact)) {
      try {
        take(greedy_ex_lower(g, pattern, derive_seed(row.seed, {1}), cfg.copy_budget).edge_count(), "greedy");
      } catch (const BudgetExceeded&) {
        exhausted = true;
      }
    }
    if (cfg.use_star && g.vertex_count() > 0) {
      Vertex centre = 0;
      for (Vertex v = 1; v < g.vertex_count(); ++v) {
        if (g.degree(v) > g.degree(centre)) centre = v;
      }
      auto star = star_witness(g, centre);
      if (star_safe || !contains_copy(star, pattern)) take(star.edge_count(), "star");
    }
    row.estimator = source;
    row.witness = best;
    if (source == "none") {
      row.status = "budget";
    } else if (exhausted) {
      row.status = "partial";
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  for (double x : cfg.x_grid) {
    if (!(x > 0.0 && x <= cfg.r)) throw std::invalid_argument("every x must lie in (0, r]");
  }
  std::vector<SweepRow> rows;
  if (cfg.n_values.empty() || cfg.x_grid.empty() || cfg.repetitions == 0) return rows;
  const auto pattern = sweep_pattern(cfg);
  for (Vertex n : cfg.n_values) {
    if (n < pattern.covered_vertex_count()) throw std::invalid_argument("every n must be at least v(F)");
  }
  const bool star_safe = !edges_have_common_vertex(pattern);
  for (Vertex n : cfg.n_values) {
    for (std::size_t xi = 0; xi < cfg.x_grid.size(); ++xi) {
      for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        SweepRow row;
        row.n = n;
        row.x = cfg.x_grid[xi];
        row.x_index = xi;
        row.p = std::pow(static_cast<double>(n), -cfg.r + row.x);
        row.repetition = rep;
        row.seed = derive_seed(cfg.seed, {n, xi, rep});
        if (cfg.family != Family::kCustom) {
          row.theory = theoretical_exponent(cfg.family, cfg.r, cfg.k, Rational::parse(std::to_string(row.x))).to_double();
        } else {
          row.theory = std::nan("");
        }
        rows.push_back(row);
      }
    }
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(rows.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(cfg, pattern, star_safe, rows[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

const char* const kSweepCsvHeader = "n,x,p,repetition,seed,edges,estimator,witness,exact,theory,status";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    out << r.n << ',';
    std::snprintf(buf, sizeof buf, "%.6g", r.x);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.p);
    out << buf << ',' << r.repetition << ',' << r.seed << ',' << r.edges << ',' << r.estimator << ','
        << r.witness << ',';
    if (r.exact) out << *r.exact;
    out << ',';
    if (std::isnan(r.theory)) {
      out << "";
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", r.theory);
      out << buf;
    }
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << ',' << status << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ParseError(1, std::string("expected the sweep header `") + kSweepCsvHeader + "`");
  }
  ++lineno;
  std::map<double, std::size_t> x_index;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw ParseError(lineno, "expected 11 columns, found " + std::to_string(f.size()));
    try {
      SweepRow r;
      r.n = static_cast<Vertex>(std::stoul(f[0]));
      r.x = std::stod(f[1]);
      r.p = std::stod(f[2]);
      r.repetition = std::stoul(f[3]);
      r.seed = std::stoull(f[4]);
      r.edges = std::stoul(f[5]);
      r.estimator = f[6];
      r.witness = std::stoul(f[7]);
      if (!f[8].empty()) r.exact = std::stoul(f[8]);
      r.theory = f[9].empty() ? std::nan("") : std::stod(f[9]);
      r.status = f[10];
      x_index.emplace(r.x, x_index.size());
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "malformed number");
    }
  }
  for (auto& r : rows) r.x_index = x_index.at(r.x);
  return rows;
}

SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_line needs matching lengths");
  SlopeFit f;
  f.points = xs.size();
  if (xs.empty()) throw std::invalid_argument("fit_line needs at least two distinct x values");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 1e-300) throw std::invalid_argument("fit_line needs at least two distinct x values");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += e * e;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

namespace {

bool usable(const SweepRow& r) { return r.witness > 0 && (r.status == "ok" || r.status == "partial"); }

}  // namespace

std::vector<ExponentFit> fit_exponents(const std::vector<SweepRow>& rows) {
  std::map<std::size_t, std::vector<const SweepRow*>> by_x;
  for (const auto& r : rows) by_x[r.x_index].push_back(&r);
  std::vector<ExponentFit> out;
  for (const auto& [xi, group] : by_x) {
    ExponentFit e;
    e.x = group.front()->x;
    e.theory = group.front()->theory;
    std::vector<double> ln_n, ln_w;
    for (const auto* r : group) {
      if (!usable(*r)) {
        ++e.dropped;
        continue;
      }
      ln_n.push_back(std::log(static_cast<double>(r->n)));
      ln_w.push_back(std::log(static_cast<double>(r->witness)));
    }
    e.fit = fit_line(ln_n, ln_w);
    out.push_back(e);
  }
  return out;
}

SlopeFit fit_p_slope(const std::vector<SweepRow>& rows, Vertex n) {
  std::vector<double> ln_p, ln_w;
  for (const auto& r : rows) {
    if (r.n != n || !usable(r)) continue;
    ln_p.push_back(std::log(r.p));
    ln_w.push_back(std::log(static_cast<double>(r.witness)));
  }
  return fit_line(ln_p, ln_w);
}

}  // namespace turan
