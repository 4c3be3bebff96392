#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "turan/hypergraph.hpp"

namespace turan {

// Canonical text form: a header line `r n m`, then m lines of r vertex ids.
// Blank lines and lines starting with '#' are ignored.
Hypergraph read_text(std::istream& in);
void write_text(std::ostream& out, const Hypergraph& h);

// {"r": r, "n": n, "edges": [[...], ...]}
nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

/// Reads a hypergraph file; `.json` selects the JSON form, anything else the
/// text form. Errors name the file.
Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const std::string& path, const Hypergraph& h);

}  // namespace turan
