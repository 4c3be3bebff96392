#include "turan/patterns.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "turan/errors.hpp"
#include "turan/hypergraph_io.hpp"
#include "turan/rng.hpp"

namespace turan {

TightTreeWitness tight_path(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("tight path needs k >= 1 and l >= 1");
  TightTreeWitness t;
  t.uniformity = k;
  for (int i = 0; i < l; ++i) {
    std::vector<Vertex> e;
    for (int j = 0; j < k; ++j) e.push_back(static_cast<Vertex>(i + j));
    t.edges.push_back(std::move(e));
    t.new_vertex.push_back(i == 0 ? 0 : static_cast<Vertex>(i + k - 1));
    t.parent.push_back(i == 0 ? 0 : static_cast<std::size_t>(i - 1));
  }
  return t;
}

CliqueTree clique_tree(int k) {
  if (k < 2) throw std::invalid_argument("clique tree needs k >= 2");
  CliqueTree out;
  out.tree.uniformity = k;
  std::vector<Vertex> centre;
  for (int i = 0; i < k; ++i) centre.push_back(static_cast<Vertex>(i));
  out.tree.edges.push_back(centre);
  out.tree.new_vertex.push_back(0);
  out.tree.parent.push_back(0);
  // Petal i omits centre vertex k-1-i, so petals come out in lexicographic order.
  for (int i = 0; i < k; ++i) {
    std::vector<Vertex> petal;
    for (int j = 0; j < k; ++j) {
      if (j != k - 1 - i) petal.push_back(static_cast<Vertex>(j));
    }
    petal.push_back(static_cast<Vertex>(k + i));
    out.tree.edges.push_back(std::move(petal));
    out.tree.new_vertex.push_back(static_cast<Vertex>(k + i));
    out.tree.parent.push_back(0);
    out.petals.push_back(static_cast<std::size_t>(i + 1));
  }
  return out;
}

ExpansionPattern clique_expansion(int k, int r) {
  if (k < 2 || r < k) throw std::invalid_argument("clique expansion needs 2 <= k <= r");
  auto ct = clique_tree(k);
  return expand(tree_subgraph(ct.tree, ct.petals), r);
}

namespace {

void grow_trees(TightTreeWitness& t, int l, std::vector<TightTreeWitness>& out) {
  if (static_cast<int>(t.edges.size()) == l) {
    out.push_back(t);
    return;
  }
  const auto fresh = static_cast<Vertex>(t.uniformity + t.edges.size() - 1);
  const std::size_t count = t.edges.size();
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t drop = 0; drop < t.edges[p].size(); ++drop) {
      std::vector<Vertex> e;
      for (std::size_t j = 0; j < t.edges[p].size(); ++j) {
        if (j != drop) e.push_back(t.edges[p][j]);
      }
      e.push_back(fresh);
      t.edges.push_back(std::move(e));
      t.new_vertex.push_back(fresh);
      t.parent.push_back(p);
      grow_trees(t, l, out);
      t.edges.pop_back();
      t.new_vertex.pop_back();
      t.parent.pop_back();
    }
  }
}

}  // namespace

std::vector<TightTreeWitness> enumerate_tight_trees(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("tight tree enumeration needs k >= 1 and l >= 1");
  TightTreeWitness t;
  t.uniformity = k;
  std::vector<Vertex> first;
  for (int i = 0; i < k; ++i) first.push_back(static_cast<Vertex>(i));
  t.edges.push_back(first);
  t.new_vertex.push_back(0);
  t.parent.push_back(0);
  std::vector<TightTreeWitness> out;
  grow_trees(t, l, out);
  return out;
}

TightTreeWitness random_tight_tree(int k, int l, std::uint64_t seed) {
  if (k < 1 || l < 1) throw std::invalid_argument("random tight tree needs k >= 1 and l >= 1");
  Rng rng(seed);
  TightTreeWitness t = tight_path(k, 1);
  for (int i = 1; i < l; ++i) {
    const auto p = static_cast<std::size_t>(rng.below(t.edges.size()));
    const auto drop = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k)));
    const auto fresh = static_cast<Vertex>(k + i - 1);
    std::vector<Vertex> e;
    for (std::size_t j = 0; j < t.edges[p].size(); ++j) {
      if (j != drop) e.push_back(t.edges[p][j]);
    }
    e.push_back(fresh);
    t.edges.push_back(std::move(e));
    t.new_vertex.push_back(fresh);
    t.parent.push_back(p);
  }
  return t;
}

Hypergraph linear_cycle(int r, int l) {
  if (r < 2 || l < 2) throw std::invalid_argument("linear cycle needs r >= 2 and l >= 2");
  const auto n = static_cast<Vertex>(l * (r - 1));
  std::vector<std::vector<Vertex>> edges;
  for (int i = 0; i < l; ++i) {
    std::vector<Vertex> e;
    for (int j = 0; j < r; ++j) e.push_back(static_cast<Vertex>((i * (r - 1) + j) % n));
    edges.push_back(std::move(e));
  }
  return Hypergraph(r, n, edges);
}

PatternLibrary load_pattern_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pattern library '" + path + "'");
  PatternLibrary lib;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    auto eq = line.find_first_of("=:");
    // "name = spec": the separator must come before any spec key=value pair.
    auto space = line.find_first_of(" \t", start);
    if (eq == std::string::npos) throw ParseError(lineno, "expected `name = spec`");
    std::string name = line.substr(start, std::min(eq, space) - start);
    std::string spec = line.substr(eq + 1);
    auto s0 = spec.find_first_not_of(" \t");
    if (name.empty() || s0 == std::string::npos) throw ParseError(lineno, "expected `name = spec`");
    spec = spec.substr(s0);
    while (!spec.empty() && (spec.back() == '\r' || spec.back() == ' ')) spec.pop_back();
    lib[name] = spec;
  }
  return lib;
}

namespace {

std::map<std::string, std::string> parse_params(std::istringstream& ss, const std::string& spec) {
  std::map<std::string, std::string> params;
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("pattern '" + spec + "': expected key=value, got '" + tok + "'");
    }
    params[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return params;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& key,
              const std::string& spec, std::optional<int> fallback = std::nullopt) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    throw std::invalid_argument("pattern '" + spec + "' needs " + key + "=<int>");
  }
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("pattern '" + spec + "': " + key + " must be an integer");
  }
}

}  // namespace

NamedPattern parse_pattern(const std::string& spec, const PatternLibrary& library) {
  std::istringstream ss(spec);
  std::string kind;
  if (!(ss >> kind)) throw std::invalid_argument("empty pattern spec");
  if (auto it = library.find(kind); it != library.end()) {
    std::string rest;
    std::getline(ss, rest);
    if (rest.find_first_not_of(" \t") != std::string::npos) {
      throw std::invalid_argument("library pattern '" + kind + "' takes no parameters");
    }
    auto p = parse_pattern(it->second, {});
    p.spec = spec;
    return p;
  }
  if (kind.rfind("file=", 0) == 0) {
    auto g = load_hypergraph(kind.substr(5));
    return NamedPattern{spec, g, std::nullopt, {}};
  }
  auto params = parse_params(ss, spec);
  if (kind == "tight_path" || kind == "tight_pair") {
    int k = int_param(params, "k", spec);
    int l = kind == "tight_pair" ? 2 : int_param(params, "l", spec);
    int r = int_param(params, "r", spec, k);
    auto t = tight_path(k, l);
    std::vector<std::size_t> all(t.edges.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto g = expand(tree_subgraph(t, all), r).graph;
    return NamedPattern{spec, g, t, all};
  }
  if (kind == "clique_expansion") {
    int k = int_param(params, "k", spec);
    int r = int_param(params, "r", spec, k);
    auto ct = clique_tree(k);
    auto g = expand(tree_subgraph(ct.tree, ct.petals), r).graph;
    return NamedPattern{spec, g, ct.tree, ct.petals};
  }
  if (kind == "linear_cycle") {
    return NamedPattern{spec, linear_cycle(int_param(params, "r", spec), int_param(params, "l", spec)),
                        std::nullopt, {}};
  }
  throw std::invalid_argument("unknown pattern kind '" + kind +
                              "' (expected tight_path, tight_pair, clique_expansion, linear_cycle, file=...)");
}

}  // namespace turan
