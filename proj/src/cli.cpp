#include "turan/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "turan/constructions.hpp"
#include "turan/copies.hpp"
#include "turan/errors.hpp"
#include "turan/expansion.hpp"
#include "turan/hypergraph_io.hpp"
#include "turan/oracle.hpp"
#include "turan/patterns.hpp"
#include "turan/random_turan.hpp"
#include "turan/rng.hpp"
#include "turan/supersaturation.hpp"
#include "turan/tight_tree.hpp"

#ifndef TURAN_VERSION
#define TURAN_VERSION "0.0.0"
#endif

namespace turan {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

std::string file_sha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

namespace {

// Failed certificate check inside a subcommand.
struct CertificateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

const std::vector<std::string> kConfigKeys = {
    "out", "seed", "threads", "budget_copies", "budget_runs", "format", "family", "r", "k", "pattern",
    "n", "x", "repetitions", "estimator", "node_budget", "work_budget", "star"};

KeyValues read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + " line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(body.substr(0, eq));
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw std::invalid_argument(path + " line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    kv[key] = trim(body.substr(eq + 1));
  }
  return kv;
}

std::uint64_t to_u64(const std::string& what, const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument(what + ": expected a non-negative integer, got '" + s + "'");
}

double to_double(const std::string& what, const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument(what + ": expected a number, got '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Resolved global settings: flag, then environment, then config, then default.
struct Settings {
  std::string out = "out";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget_copies = 1'000'000;
  std::uint64_t budget_runs = 4'000'000;
  std::string format = "json";
  KeyValues config;
};

class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    f << content;
    files_.push_back(name);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  json digests() const {
    json d = json::object();
    for (const auto& f : files_) d[f] = file_sha256((dir_ / f).string());
    return d;
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string hypergraph_text(const Hypergraph& h) {
  std::ostringstream s;
  write_text(s, h);
  return s.str();
}

Hypergraph sample_or_load(const std::string& host, const std::string& gnp, int r, std::uint64_t seed) {
  if (!host.empty()) return load_hypergraph(host);
  if (gnp.empty()) throw std::invalid_argument("give a host with --host FILE or --gnp N,P");
  auto parts = split_list(gnp);
  if (parts.size() != 2) throw std::invalid_argument("--gnp expects N,P");
  return sample_gnp(static_cast<Vertex>(to_u64("--gnp N", parts[0])), r, to_double("--gnp P", parts[1]),
                    derive_seed(seed, {0x686f7374ULL}));
}

json trace_json(const std::vector<LevelTrace>& trace) {
  json out = json::array();
  for (const auto& t : trace) {
    out.push_back({{"uniformity", t.uniformity}, {"branch", t.branch},     {"t", t.t},
                   {"threshold", t.threshold},   {"host_edges", t.host_edges}, {"working_edges", t.working_edges},
                   {"large_edges", t.large_edges}, {"tau", t.tau},          {"level", t.level},
                   {"shadow_edges", t.shadow_edges}, {"extended", t.extended}, {"dropped", t.dropped},
                   {"copies", t.copies}});
  }
  return out;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& spec, const std::string& library, Artifacts& art, std::ostream& out) {
  const auto lib = library.empty() ? PatternLibrary{} : load_pattern_library(library);
  const auto pat = parse_pattern(spec, lib);
  const auto& g = pat.graph;
  json j;
  j["pattern"] = spec;
  j["uniformity"] = g.uniformity();
  j["vertices"] = g.covered_vertex_count();
  j["edges"] = g.edge_count();
  out << "pattern: " << spec << "\n";
  out << "r = " << g.uniformity() << ", v = " << g.covered_vertex_count() << ", e = " << g.edge_count() << "\n";
  if (g.edge_count() >= 2) {
    const auto m = r_density(g);
    j["m"] = m.str();
    j["s"] = m.reciprocal().str();
    out << "m = " << m.str() << "\n";
    out << "s = " << m.reciprocal().str() << "\n";
  } else {
    j["m"] = nullptr;
    j["s"] = nullptr;
    out << "m, s undefined (fewer than two edges)\n";
  }
  json sh = json::object();
  for (int k = 1; k < g.uniformity(); ++k) {
    const auto c = shadows(g, k).size();
    sh[std::to_string(k)] = c;
    out << "shadows(" << k << ") = " << c << "\n";
  }
  j["shadows"] = sh;
  auto edges = g.edge_list();
  const bool tight = g.edge_count() > 0 && check_tight_tree(g.uniformity(), edges).has_value();
  j["tight_tree"] = tight;
  out << "tight tree: " << (tight ? "yes" : "no") << "\n";
  if (pat.tree) {
    const int k = pat.tree->uniformity;
    j["base_uniformity"] = k;
    j["delta"] = g.uniformity() - k;
    j["spanning_subset"] = pat.subset;
    out << "expansion of a spanning subgraph of a tight " << k << "-tree, delta = " << g.uniformity() - k << "\n";
  }
  const bool common = edges_have_common_vertex(g);
  j["common_vertex"] = common;
  out << "edges share a common vertex: " << (common ? "yes" : "no") << "\n";
  const auto aut = PatternMatcher(g).automorphisms();
  j["automorphisms"] = aut;
  out << "automorphisms = " << aut << "\n";
  art.write_json("analysis.json", j);
  return kExitOk;
}

// ---------------------------------------------------------------- supersat

struct SupersatArgs {
  std::string host, gnp, pattern, mode = "balanced";
  double t = 0;
  std::size_t min_t = 1;
  int partition_trials = 16;
  std::uint64_t max_extensions = 64;
};

int cmd_supersat(const SupersatArgs& a, const Settings& s, Artifacts& art, std::ostream& out) {
  const auto pat = parse_pattern(a.pattern);
  if (!pat.tree) throw std::invalid_argument("supersat needs a tree-derived pattern (tight_path, tight_pair, clique_expansion)");
  const int r = pat.graph.uniformity();
  const auto h = sample_or_load(a.host, a.gnp, r, s.seed);
  if (h.uniformity() != r) throw std::invalid_argument("host uniformity differs from the pattern's");
  CopyCollection c;
  if (a.mode == "balanced") {
    BalancedOptions o;
    o.min_t = a.min_t;
    o.partition_trials = a.partition_trials;
    o.run_budget = s.budget_runs;
    o.max_extensions = a.max_extensions;
    o.extension_budget = s.budget_runs;
    c = balanced_collection(h, *pat.tree, pat.subset, r, a.t, s.seed, o);
  } else if (a.mode == "greedy") {
    const auto et = expanded_tree(*pat.tree, pat.subset, r);
    GreedyOptions o;
    o.min_t = a.min_t;
    o.run_budget = s.budget_runs;
    o.seed = s.seed;
    auto full = greedy_tree_copies(h, et.tree, static_cast<std::size_t>(std::floor(a.t)), o);
    c = restrict_to_pattern(full, et.tree, et.pattern_edges);
  } else {
    throw std::invalid_argument("--mode must be balanced or greedy");
  }
  for (const auto& copy : c.copies) {
    if (!is_copy_of(h, copy, pat.graph)) throw CertificateFailure("collection contains a non-copy");
  }
  std::ostringstream lines;
  write_collection(lines, c);
  art.write("collection.jsonl", lines.str());
  json report;
  report["pattern"] = a.pattern;
  report["mode"] = a.mode;
  report["host_vertices"] = h.vertex_count();
  report["host_edges"] = h.edge_count();
  report["t"] = a.t;
  report["copies"] = c.copies.size();
  report["certified"] = c.certified;
  report["sampled_fraction"] = c.sampled_fraction;
  json deltas = json::array();
  out << "copies = " << c.copies.size() << (c.certified ? "" : " (sampled)") << "\n";
  for (std::size_t j = 1; j <= pat.graph.edge_count(); ++j) {
    const auto d = delta_j(c, j);
    deltas.push_back(d);
    out << "Delta_" << j << " = " << d << "\n";
  }
  report["delta"] = deltas;
  report["trace"] = trace_json(c.trace);
  art.write_json("report.json", report);
  return kExitOk;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string host, pattern, mode = "constructive";
  Vertex vertex = 0;
  int n_range = 0;
  std::size_t m = 5;
  int r = 3, k = 3;
  Vertex n = 0;
  double p = -1, x = -1;
  std::size_t runs = 20;
};

json gj_cert_json(const GjCertificate& c) {
  return {{"ok", c.ok}, {"violation", c.violation}, {"witness", c.witness}, {"edges", c.edges}};
}

ProgressionFreeSet pick_behrend(int n, const std::string& mode) {
  if (mode == "exhaustive") return behrend_set(n, BehrendMode::kExhaustive);
  if (mode == "constructive") return behrend_set(n, BehrendMode::kConstructive);
  if (mode == "auto") {
    return behrend_set(n, n <= kExhaustiveBehrendCap ? BehrendMode::kExhaustive : BehrendMode::kConstructive);
  }
  throw std::invalid_argument("--mode must be exhaustive, constructive or auto");
}

int cmd_construct(const std::string& kind, const ConstructArgs& a, const Settings& s, Artifacts& art,
                  std::ostream& out) {
  json cert;
  cert["kind"] = kind;
  cert["seed"] = s.seed;
  if (kind == "star") {
    const auto g = load_hypergraph(a.host);
    auto star = star_witness(g, a.vertex);
    cert["edges"] = star.edge_count();
    if (!a.pattern.empty()) {
      const auto f = parse_pattern(a.pattern).graph;
      const bool free = !contains_copy(star, f);
      cert["pattern"] = a.pattern;
      cert["pattern_free"] = free;
      if (!free) {
        art.write_json("certificate.json", cert);
        throw CertificateFailure("the star contains a copy of the pattern");
      }
    }
    art.write("graph.txt", hypergraph_text(star));
    out << "star edges = " << star.edge_count() << "\n";
  } else if (kind == "random-deletion") {
    const auto g = load_hypergraph(a.host);
    const auto f = parse_pattern(a.pattern).graph;
    auto res = delete_edge_per_copy(g, f, s.seed, s.budget_copies);
    cert["pattern"] = a.pattern;
    cert["input_edges"] = g.edge_count();
    cert["copies"] = res.copies;
    cert["deleted"] = res.deleted;
    cert["edges"] = res.witness.edge_count();
    cert["pattern_free"] = true;
    art.write("graph.txt", hypergraph_text(res.witness));
    out << "witness edges = " << res.witness.edge_count() << " (" << res.copies << " copies)\n";
  } else if (kind == "behrend") {
    const auto set = pick_behrend(a.n_range, a.mode);
    cert["N"] = a.n_range;
    cert["mode"] = a.mode;
    cert["size"] = set.elements.size();
    cert["elements"] = set.elements;
    cert["progression_free"] = is_progression_free(set.elements);
    out << "size = " << set.elements.size() << "\n";
  } else if (kind == "rs" || kind == "blowup") {
    const auto set = pick_behrend(static_cast<int>(a.m), a.mode);
    const auto base = rs_hypergraph(a.m, a.r, set);
    cert["m"] = a.m;
    cert["r"] = a.r;
    cert["progression"] = set.elements;
    cert["base_vertices"] = base.vertex_count();
    cert["base_edges"] = base.edge_count();
    cert["validation"] = gj_cert_json(validate_gj(base, 2));
    if (kind == "rs") {
      art.write("graph.txt", hypergraph_text(base));
      out << "edges = " << base.edge_count() << " (m * |A| = " << a.m * set.elements.size() << ")\n";
    } else {
      const auto b = blowup(base, a.n == 0 ? base.vertex_count() : a.n);
      auto check = gj2_check(b, 2, s.budget_copies);
      cert["n"] = b.blown.vertex_count();
      cert["blown_edges"] = b.blown.edge_count();
      cert["part_sizes"] = b.part_sizes;
      cert["gj2"] = {{"ok", check.ok}, {"copies", check.copies}, {"violation", check.violation}};
      art.write("graph.txt", hypergraph_text(b.blown));
      out << "blown edges = " << b.blown.edge_count() << ", simplex copies = " << check.copies << "\n";
      if (!check.ok) {
        art.write_json("certificate.json", cert);
        throw CertificateFailure("a simplex copy spans several base edges");
      }
    }
  } else if (kind == "gj-experiment") {
    GjExperimentConfig cfg;
    cfg.n = a.n;
    cfg.r = a.r;
    cfg.k = a.k;
    cfg.runs = a.runs;
    cfg.seed = s.seed;
    cfg.budget = s.budget_copies;
    if (a.p >= 0) {
      cfg.p = a.p;
    } else if (a.x >= 0) {
      cfg.p = std::pow(static_cast<double>(a.n), -a.r + a.x);
    } else {
      throw std::invalid_argument("gj-experiment needs --p or --x");
    }
    const auto e = gj_experiment(cfg);
    cert["n"] = cfg.n;
    cert["p"] = cfg.p;
    cert["recipe_m"] = e.recipe_m;
    cert["base_m"] = e.base_m;
    cert["progression_size"] = e.progression_size;
    cert["base_vertices"] = e.base_vertices;
    cert["base_edges"] = e.base_edges;
    cert["blown_edges"] = e.blown_edges;
    std::ostringstream csv;
    csv << "run,seed,x,y,witness,certified\n";
    std::size_t half = 0, certified = 0;
    for (std::size_t i = 0; i < e.runs.size(); ++i) {
      const auto& run = e.runs[i];
      csv << i << ',' << run.seed << ',' << run.x << ',' << run.y << ',' << run.witness_edges << ','
          << (run.certified ? 1 : 0) << '\n';
      half += 2 * run.y <= run.x;
      certified += run.certified;
    }
    cert["runs"] = e.runs.size();
    cert["y_at_most_half_x"] = half;
    cert["certified"] = certified;
    art.write("runs.csv", csv.str());
    out << "runs with Y <= X/2: " << half << "/" << e.runs.size() << ", certified: " << certified << "/"
        << e.runs.size() << "\n";
    if (certified != e.runs.size()) {
      art.write_json("certificate.json", cert);
      throw CertificateFailure("a pruned witness failed its certificate");
    }
  } else {
    throw std::invalid_argument("unknown construction '" + kind + "'");
  }
  art.write_json("certificate.json", cert);
  return kExitOk;
}

// ---------------------------------------------------------------- turan

struct TuranArgs {
  Vertex n = 0;
  int r = 3;
  double p = -1, x = -1;
  std::string pattern, estimator = "auto";
  std::uint64_t node_budget = kDefaultNodeBudget;
};

int cmd_turan(const TuranArgs& a, const Settings& s, Artifacts& art, std::ostream& out) {
  const auto f = parse_pattern(a.pattern).graph;
  if (f.uniformity() != a.r) throw std::invalid_argument("pattern uniformity differs from --r");
  double p = a.p;
  if (p < 0) {
    if (a.x < 0) throw std::invalid_argument("turan needs --p or --x");
    p = std::pow(static_cast<double>(a.n), -a.r + a.x);
  }
  const auto g = sample_gnp(a.n, a.r, p, derive_seed(s.seed, {0}));
  art.write("sample.txt", hypergraph_text(g));
  json j;
  j["n"] = a.n;
  j["r"] = a.r;
  j["p"] = p;
  j["pattern"] = a.pattern;
  j["edges"] = g.edge_count();
  const auto est = parse_estimator(a.estimator);
  int code = kExitOk;
  std::size_t best = 0;
  try {
    j["copies"] = count_copies(g, f, s.budget_copies);
  } catch (const BudgetExceeded& e) {
    j["copies"] = nullptr;
    j["copies_at_least"] = e.partial();
    code = kExitBudget;
  }
  if (est != Estimator::kGreedy && code == kExitOk) {
    auto ex = exact_ex(g, f, a.node_budget, s.budget_copies);
    j["exact"] = {{"lower", ex.lower}, {"upper", ex.upper}, {"exact", ex.exact}, {"nodes", ex.nodes}};
    best = std::max(best, ex.lower);
    if (!ex.exact && est == Estimator::kExact) code = kExitBudget;
  }
  if (est != Estimator::kExact && code == kExitOk) {
    const auto w = greedy_ex_lower(g, f, derive_seed(s.seed, {1}), s.budget_copies);
    j["greedy"] = w.edge_count();
    best = std::max(best, w.edge_count());
  }
  Vertex centre = 0;
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) > g.degree(centre)) centre = v;
  }
  if (g.vertex_count() > 0) {
    const auto star = star_witness(g, centre);
    const bool free = !contains_copy(star, f);
    j["star"] = {{"centre", centre}, {"edges", star.edge_count()}, {"pattern_free", free}};
    if (free) best = std::max(best, star.edge_count());
  }
  j["best_lower"] = best;
  art.write_json("result.json", j);
  out << "edges = " << g.edge_count() << ", best pattern-free subgraph found = " << best << "\n";
  return code;
}

// ---------------------------------------------------------------- sweep

SweepConfig sweep_config(const Settings& s, const KeyValues& flags) {
  auto get = [&](const std::string& key, const std::string& fallback) {
    if (auto it = flags.find(key); it != flags.end()) return it->second;
    if (auto it = s.config.find(key); it != s.config.end()) return it->second;
    return fallback;
  };
  SweepConfig cfg;
  cfg.family = parse_family(get("family", "tight-tree"));
  cfg.r = static_cast<int>(to_u64("r", get("r", "3")));
  cfg.k = static_cast<int>(to_u64("k", get("k", "2")));
  cfg.pattern = get("pattern", "");
  for (const auto& v : split_list(get("n", ""))) cfg.n_values.push_back(static_cast<Vertex>(to_u64("n", v)));
  for (const auto& v : split_list(get("x", ""))) cfg.x_grid.push_back(to_double("x", v));
  cfg.repetitions = to_u64("repetitions", get("repetitions", "1"));
  cfg.estimator = parse_estimator(get("estimator", "auto"));
  cfg.node_budget = to_u64("node_budget", get("node_budget", "200000"));
  cfg.work_budget = to_u64("work_budget", get("work_budget", "200000000"));
  const auto star = get("star", "1");
  if (star != "0" && star != "1") throw std::invalid_argument("star: expected 0 or 1");
  cfg.use_star = star == "1";
  cfg.seed = s.seed;
  cfg.threads = s.threads;
  cfg.copy_budget = s.budget_copies;
  return cfg;
}

json sweep_config_json(const SweepConfig& c) {
  return {{"family", family_name(c.family)},
          {"r", c.r},
          {"k", c.k},
          {"pattern", c.pattern},
          {"n", c.n_values},
          {"x", c.x_grid},
          {"repetitions", c.repetitions},
          {"seed", c.seed},
          {"estimator", estimator_name(c.estimator)},
          {"copy_budget", c.copy_budget},
          {"node_budget", c.node_budget},
          {"work_budget", c.work_budget},
          {"star", c.use_star}};
}

json rows_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json j = {{"n", r.n},         {"x", r.x},         {"p", r.p},
              {"repetition", r.repetition}, {"seed", r.seed}, {"edges", r.edges},
              {"estimator", r.estimator}, {"witness", r.witness}, {"status", r.status}};
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    j["theory"] = std::isnan(r.theory) ? json(nullptr) : json(r.theory);
    out.push_back(j);
  }
  return out;
}

json fits_json(const std::vector<SweepRow>& rows, const SweepConfig& cfg) {
  json fits = json::array();
  try {
    for (const auto& f : fit_exponents(rows)) {
      json e = {{"x", f.x}, {"slope", f.fit.slope}, {"intercept", f.fit.intercept},
                {"rms_residual", f.fit.rms_residual}, {"points", f.fit.points}, {"dropped", f.dropped}};
      e["theory"] = std::isnan(f.theory) ? json(nullptr) : json(f.theory);
      if (cfg.family == Family::kClique && cfg.k == 3) {
        e["prior_claim"] = prior_claim_exponent(cfg.r, Rational::parse(std::to_string(f.x))).to_double();
      }
      fits.push_back(e);
    }
  } catch (const std::invalid_argument& e) {
    fits = {{"error", e.what()}};
  }
  json pslopes = json::object();
  for (Vertex n : cfg.n_values) {
    try {
      pslopes[std::to_string(n)] = fit_p_slope(rows, n).slope;
    } catch (const std::invalid_argument&) {
      pslopes[std::to_string(n)] = nullptr;
    }
  }
  return {{"log_n_fits", fits}, {"log_p_slopes", pslopes}};
}

int cmd_sweep(const Settings& s, const KeyValues& flags, Artifacts& art, std::ostream& out) {
  const auto cfg = sweep_config(s, flags);
  const auto rows = run_sweep(cfg);
  if (s.format == "csv") {
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    art.write("sweep.csv", csv.str());
  } else {
    art.write_json("sweep_rows.json", rows_json(rows));
  }
  json side;
  side["config"] = sweep_config_json(cfg);
  side["version"] = TURAN_VERSION;
  side["fits"] = rows.empty() ? json(nullptr) : fits_json(rows, cfg);
  if (cfg.family == Family::kClique && cfg.k == 3) {
    side["prior_claim_note"] = "prior_claim is a lower-bound curve claimed in earlier work, shown for comparison only";
  }
  art.write_json("sweep.json", side);
  // Wall times vary between runs, so they live outside the primary outputs.
  std::ofstream timing(art.dir() / "timing.csv");
  timing << "n,x,repetition,wall_seconds\n";
  for (const auto& r : rows) timing << r.n << ',' << r.x << ',' << r.repetition << ',' << r.wall_seconds << '\n';
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.status.rfind("error", 0) == 0;
  out << rows.size() << " cells, " << failed << " failed\n";
  return kExitOk;
}

// ---------------------------------------------------------------- plot-data

int cmd_plot_data(const std::string& in_path, const Settings& s, Artifacts& art, std::ostream& out) {
  std::ifstream in(in_path);
  if (!in) throw std::invalid_argument("cannot open sweep file " + in_path);
  const auto rows = read_sweep_csv(in);
  const auto fits = fit_exponents(rows);
  if (s.format == "json") {
    json j = json::array();
    for (const auto& f : fits) {
      j.push_back({{"x", f.x}, {"fitted_slope", f.fit.slope},
                   {"theory", std::isnan(f.theory) ? json(nullptr) : json(f.theory)}});
    }
    art.write_json("plot.json", j);
  } else {
    std::ostringstream csv;
    csv << "x,fitted_slope,theory\n" << std::setprecision(17);
    for (const auto& f : fits) {
      csv << f.x << ',' << f.fit.slope << ',';
      if (!std::isnan(f.theory)) csv << f.theory;
      csv << '\n';
    }
    art.write("plot.csv", csv.str());
  }
  out << fits.size() << " grid points\n";
  return kExitOk;
}

// ---------------------------------------------------------------- selftest

struct Suite {
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

Hypergraph random_small(Rng& rng, int r, Vertex n, double p) {
  std::vector<std::vector<Vertex>> edges;
  for_each_combination(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> idx) {
    if (rng.bernoulli(p)) edges.emplace_back(idx.begin(), idx.end());
  });
  return Hypergraph(r, n, edges);
}

std::vector<Suite> selftest_suites(std::uint64_t seed) {
  std::vector<Suite> suites;
  suites.push_back({"r_density vs subset oracle", [seed] {
                      Rng rng(derive_seed(seed, {1}));
                      for (int i = 0; i < 40; ++i) {
                        auto g = random_small(rng, 3, 6, 0.15 + 0.02 * (i % 5));
                        if (g.edge_count() < 2 || g.edge_count() > 12) continue;
                        if (r_density(g) != oracle::r_density(g)) return "case " + std::to_string(i);
                      }
                      return std::string();
                    }});
  suites.push_back({"copy counts vs permutation oracle", [seed] {
                      Rng rng(derive_seed(seed, {2}));
                      const std::vector<Hypergraph> pats = {Hypergraph(3, 4, {{0, 1, 2}, {1, 2, 3}}),
                                                            clique_expansion(3, 3).graph,
                                                            Hypergraph(3, 5, {{0, 1, 2}, {2, 3, 4}})};
                      for (int i = 0; i < 60; ++i) {
                        const auto& f = pats[static_cast<std::size_t>(i) % pats.size()];
                        auto g = random_small(rng, 3, static_cast<Vertex>(6 + i % 3), 0.3);
                        if (count_copies(g, f) != oracle::count_copies(g, f)) return "case " + std::to_string(i);
                      }
                      return std::string();
                    }});
  suites.push_back({"exact_ex vs subset oracle", [seed] {
                      Rng rng(derive_seed(seed, {3}));
                      const auto f = clique_expansion(3, 3).graph;
                      for (int i = 0; i < 20; ++i) {
                        auto g = random_small(rng, 3, 7, 0.3);
                        if (g.edge_count() > 14) continue;
                        if (exact_ex(g, f).lower != oracle::exact_ex(g, f)) return "case " + std::to_string(i);
                      }
                      return std::string();
                    }});
  suites.push_back({"progression-free optimum vs subset oracle", [] {
                      for (int n = 1; n <= 16; ++n) {
                        if (behrend_set(n, BehrendMode::kExhaustive).elements.size() != oracle::max_progression_free(n)) {
                          return "N = " + std::to_string(n);
                        }
                      }
                      return std::string();
                    }});
  suites.push_back({"cleanup codegree audit", [seed] {
                      Rng rng(derive_seed(seed, {4}));
                      for (int i = 0; i < 20; ++i) {
                        auto g = random_small(rng, 3, 12, 0.5);
                        const std::size_t t = 2 + static_cast<std::size_t>(i % 4);
                        auto c = codegree_cleanup(g, t);
                        for (const auto& sh : shadows(c, 2)) {
                          if (2 * codegree(c, sh.view()) <= t) return "case " + std::to_string(i);
                        }
                      }
                      return std::string();
                    }});
  suites.push_back({"codegree partition replay", [seed] {
                      Rng rng(derive_seed(seed, {5}));
                      for (int i = 0; i < 10; ++i) {
                        auto g = random_small(rng, 3, 12, 0.5);
                        auto choice = best_random_partition(g, 4, rng.next());
                        auto part = codegree_partition(choice.graph, choice.partition, 3);
                        if (auto err = verify_codegree_partition(choice.graph, choice.partition, part)) return *err;
                      }
                      return std::string();
                    }});
  suites.push_back({"spreadness shift under expansion", [] {
                      for (const auto& t : enumerate_tight_trees(2, 3)) {
                        for (const auto& sub : spanning_subgraphs(t)) {
                          if (sub.size() < 2) continue;
                          auto base = tree_subgraph(t, sub);
                          if (spreadness(expand(base, 4).graph) != spreadness(base) + Rational(2)) return std::string("mismatch");
                        }
                      }
                      return std::string();
                    }});
  return suites;
}

int cmd_selftest(const Settings& s, Artifacts& art, std::ostream& out) {
  json report = json::array();
  bool all = true;
  for (const auto& suite : selftest_suites(s.seed)) {
    std::string failure;
    try {
      failure = suite.run();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    const bool ok = failure.empty();
    all = all && ok;
    out << (ok ? "PASS " : "FAIL ") << suite.name << (ok ? "" : " (" + failure + ")") << "\n";
    report.push_back({{"suite", suite.name}, {"ok", ok}, {"detail", failure}});
  }
  art.write_json("selftest.json", report);
  return all ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------- driver

std::vector<std::string> without_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random Turan experiments for expansions of tight trees", "turan"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  std::string config_path, out_flag, format_flag;
  std::uint64_t seed_flag = 0, copies_flag = 0, runs_flag = 0;
  unsigned threads_flag = 0;
  auto* o_out = app.add_option("--out", out_flag, "output directory");
  auto* o_seed = app.add_option("--seed", seed_flag, "root seed");
  auto* o_threads = app.add_option("--threads", threads_flag, "worker threads")->check(CLI::PositiveNumber);
  auto* o_copies = app.add_option("--budget-copies", copies_flag, "copy enumeration budget");
  auto* o_runs = app.add_option("--budget-runs", runs_flag, "greedy embedding run budget");
  auto* o_format = app.add_option("--format", format_flag, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);

  auto* analyze = app.add_subcommand("analyze", "density, spreadness and shadows of a pattern");
  std::string a_pattern, a_library;
  analyze->add_option("--pattern", a_pattern, "pattern spec")->required();
  analyze->add_option("--library", a_library, "pattern library file")->check(CLI::ExistingFile);

  auto* supersat = app.add_subcommand("supersat", "balanced copy collection with co-occurrence audit");
  SupersatArgs ss;
  supersat->add_option("--host", ss.host, "host hypergraph file")->check(CLI::ExistingFile);
  supersat->add_option("--gnp", ss.gnp, "sample the host as N,P instead");
  supersat->add_option("--pattern", ss.pattern, "tree-derived pattern spec")->required();
  supersat->add_option("--t", ss.t, "degree parameter t")->required();
  supersat->add_option("--min-t", ss.min_t, "smallest accepted t (0 = library default)");
  supersat->add_option("--mode", ss.mode, "balanced or greedy");
  supersat->add_option("--partition-trials", ss.partition_trials, "random partitions tried per level");
  supersat->add_option("--max-extensions", ss.max_extensions, "completions kept per lower copy");

  auto* construct = app.add_subcommand("construct", "lower-bound constructions");
  construct->require_subcommand(1);
  ConstructArgs ca;
  std::string kind;
  auto* c_star = construct->add_subcommand("star", "all edges through one vertex");
  c_star->add_option("--host", ca.host)->required()->check(CLI::ExistingFile);
  c_star->add_option("--vertex", ca.vertex);
  c_star->add_option("--pattern", ca.pattern, "check the star is free of this pattern");
  auto* c_del = construct->add_subcommand("random-deletion", "delete one edge per copy");
  c_del->add_option("--host", ca.host)->required()->check(CLI::ExistingFile);
  c_del->add_option("--pattern", ca.pattern)->required();
  auto* c_beh = construct->add_subcommand("behrend", "progression-free subset of [1, N]");
  c_beh->add_option("--N", ca.n_range)->required()->check(CLI::PositiveNumber);
  c_beh->add_option("--mode", ca.mode, "exhaustive, constructive or auto");
  auto* c_rs = construct->add_subcommand("rs", "r-graph from a progression-free set");
  c_rs->add_option("--m", ca.m)->required()->check(CLI::PositiveNumber);
  c_rs->add_option("--r", ca.r);
  c_rs->add_option("--mode", ca.mode, "progression-free set: exhaustive, constructive or auto");
  auto* c_blow = construct->add_subcommand("blowup", "balanced blowup of the rs construction");
  c_blow->add_option("--m", ca.m)->required()->check(CLI::PositiveNumber);
  c_blow->add_option("--r", ca.r);
  c_blow->add_option("--n", ca.n, "blown vertex count (default: no blowup)");
  c_blow->add_option("--mode", ca.mode);
  auto* c_gj = construct->add_subcommand("gj-experiment", "sample, count and prune the blown construction");
  c_gj->add_option("--n", ca.n)->required();
  c_gj->add_option("--r", ca.r);
  c_gj->add_option("--k", ca.k);
  c_gj->add_option("--p", ca.p);
  c_gj->add_option("--x", ca.x, "p = n^(x - r)");
  c_gj->add_option("--runs", ca.runs);

  auto* turan_cmd = app.add_subcommand("turan", "sample G(n,p) and bound its pattern-free subgraphs");
  TuranArgs ta;
  turan_cmd->add_option("--n", ta.n)->required();
  turan_cmd->add_option("--r", ta.r);
  turan_cmd->add_option("--p", ta.p);
  turan_cmd->add_option("--x", ta.x, "p = n^(x - r)");
  turan_cmd->add_option("--pattern", ta.pattern)->required();
  turan_cmd->add_option("--estimator", ta.estimator, "exact, greedy or auto");
  turan_cmd->add_option("--node-budget", ta.node_budget);

  auto* sweep = app.add_subcommand("sweep", "exponent sweep over n and x");
  std::map<std::string, std::string> sweep_flags_raw;
  for (const auto* key : {"family", "r", "k", "pattern", "n", "x", "repetitions", "estimator", "node_budget", "work_budget", "star"}) {
    std::string flag = std::string("--") + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    sweep->add_option(flag, sweep_flags_raw[key]);
  }

  auto* plot = app.add_subcommand("plot-data", "(x, fitted slope, theory) from a sweep CSV");
  std::string plot_in;
  plot->add_option("--in", plot_in)->required()->check(CLI::ExistingFile);

  auto* selftest = app.add_subcommand("selftest", "oracle equivalence suites");

  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string manifest_path;
  replay->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);

  std::vector<const char*> argv{"turan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (replay->parsed()) {
    std::ifstream in(manifest_path);
    json m = json::parse(in);
    auto recorded = m.at("argv").get<std::vector<std::string>>();
    recorded.push_back("--out");
    recorded.push_back(out_flag.empty() ? m.at("out").get<std::string>() : out_flag);
    return dispatch(recorded, out, err);
  }

  if (!config_path.empty()) s.config = read_config(config_path);
  auto env = [](const char* name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name)) return std::string(v);
    return std::nullopt;
  };
  auto cfg = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = s.config.find(key); it != s.config.end()) return it->second;
    return std::nullopt;
  };
  s.threads = std::max(1u, std::thread::hardware_concurrency());
  if (auto v = cfg("out")) s.out = *v;
  if (auto v = cfg("seed")) s.seed = to_u64("seed", *v);
  if (auto v = cfg("format")) s.format = *v;
  if (auto v = cfg("threads")) s.threads = static_cast<unsigned>(to_u64("threads", *v));
  if (auto v = cfg("budget_copies")) s.budget_copies = to_u64("budget_copies", *v);
  if (auto v = cfg("budget_runs")) s.budget_runs = to_u64("budget_runs", *v);
  if (auto v = env("TURAN_THREADS")) s.threads = static_cast<unsigned>(to_u64("TURAN_THREADS", *v));
  if (auto v = env("TURAN_BUDGET_COPIES")) s.budget_copies = to_u64("TURAN_BUDGET_COPIES", *v);
  if (auto v = env("TURAN_BUDGET_RUNS")) s.budget_runs = to_u64("TURAN_BUDGET_RUNS", *v);
  if (o_out->count()) s.out = out_flag;
  if (o_seed->count()) s.seed = seed_flag;
  if (o_threads->count()) s.threads = threads_flag;
  if (o_copies->count()) s.budget_copies = copies_flag;
  if (o_runs->count()) s.budget_runs = runs_flag;
  if (o_format->count()) s.format = format_flag;
  if ((sweep->parsed() || plot->parsed()) && !o_format->count() && !cfg("format")) s.format = "csv";
  if (s.format != "csv" && s.format != "json") throw std::invalid_argument("format must be csv or json");
  if (s.threads == 0) s.threads = 1;

  const auto start = std::chrono::steady_clock::now();
  Artifacts art(s.out);
  int code = kExitOk;
  std::string command;
  if (analyze->parsed()) {
    command = "analyze";
    code = cmd_analyze(a_pattern, a_library, art, out);
  } else if (supersat->parsed()) {
    command = "supersat";
    code = cmd_supersat(ss, s, art, out);
  } else if (construct->parsed()) {
    for (auto* sub : {c_star, c_del, c_beh, c_rs, c_blow, c_gj}) {
      if (sub->parsed()) kind = sub->get_name();
    }
    command = "construct " + kind;
    code = cmd_construct(kind, ca, s, art, out);
  } else if (turan_cmd->parsed()) {
    command = "turan";
    code = cmd_turan(ta, s, art, out);
  } else if (sweep->parsed()) {
    command = "sweep";
    KeyValues flags;
    for (const auto& [k, v] : sweep_flags_raw) {
      std::string flag = "--" + k;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (sweep->get_option(flag)->count()) flags[k] = v;
    }
    code = cmd_sweep(s, flags, art, out);
  } else if (plot->parsed()) {
    command = "plot-data";
    code = cmd_plot_data(plot_in, s, art, out);
  } else if (selftest->parsed()) {
    command = "selftest";
    code = cmd_selftest(s, art, out);
  }

  json manifest;
  manifest["command"] = command;
  manifest["argv"] = without_out(args);
  manifest["out"] = s.out;
  manifest["config"] = {{"seed", s.seed},          {"threads", s.threads},
                        {"budget_copies", s.budget_copies}, {"budget_runs", s.budget_runs},
                        {"format", s.format},      {"file", s.config}};
  manifest["version"] = TURAN_VERSION;
  manifest["exit_code"] = code;
  manifest["outputs"] = art.digests();
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ofstream(art.dir() / "manifest.json") << manifest.dump(2) << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const CertificateFailure& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << " (at least " << e.partial() << " found); raise --budget-copies or --budget-runs\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace turan
