#include "turan/hypergraph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "turan/errors.hpp"

namespace turan {

namespace {

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected an integer, found '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(lineno, "expected an integer, found '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Hypergraph read_text(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long r = -1, n = -1, m = -1;
  std::vector<std::vector<Vertex>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto ints = parse_ints(line, lineno);
    if (r < 0) {
      if (ints.size() != 3) throw ParseError(lineno, "header must be `r n m`");
      r = ints[0];
      n = ints[1];
      m = ints[2];
      if (r < 1 || r > static_cast<long long>(kMaxUniformity)) {
        throw ParseError(lineno, "uniformity " + std::to_string(r) + " unsupported");
      }
      if (n < 0 || n > 0xffffffffLL) throw ParseError(lineno, "bad vertex count");
      if (m < 0) throw ParseError(lineno, "bad edge count");
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError(lineno, "more edge lines than the header's m = " + std::to_string(m));
    }
    if (static_cast<long long>(ints.size()) != r) {
      throw ParseError(lineno, "expected " + std::to_string(r) + " vertex ids, found " +
                                   std::to_string(ints.size()));
    }
    std::vector<Vertex> e;
    for (long long v : ints) {
      if (v < 0 || v >= n) {
        throw ParseError(lineno, "vertex " + std::to_string(v) + " outside [0, " +
                                     std::to_string(n) + ")");
      }
      e.push_back(static_cast<Vertex>(v));
    }
    std::vector<Vertex> sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError(lineno, "edge repeats a vertex");
    }
    edges.push_back(std::move(e));
  }
  if (r < 0) throw ParseError(lineno, "missing header `r n m`");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError(lineno, "header promised " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
  }
  return Hypergraph(static_cast<int>(r), static_cast<Vertex>(n), edges);
}

void write_text(std::ostream& out, const Hypergraph& h) {
  out << h.uniformity() << ' ' << h.vertex_count() << ' ' << h.edge_count() << '\n';
  for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
    out << '\n';
  }
}

nlohmann::json to_json(const Hypergraph& h) {
  return {{"r", h.uniformity()}, {"n", h.vertex_count()}, {"edges", h.edge_list()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  for (const char* key : {"r", "n", "edges"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("JSON hypergraph lacks \"") + key + "\"");
  }
  return Hypergraph(j.at("r").get<int>(), j.at("n").get<Vertex>(),
                    j.at("edges").get<std::vector<std::vector<Vertex>>>());
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hypergraph file '" + path + "'");
  try {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
      return hypergraph_from_json(nlohmann::json::parse(in));
    }
    return read_text(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_hypergraph(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    out << to_json(h).dump() << '\n';
  } else {
    write_text(out, h);
  }
}

}  // namespace turan
