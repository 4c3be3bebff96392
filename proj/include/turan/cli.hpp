#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace turan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command line (without the program name). Artifacts go to the
/// --out directory together with manifest.json.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);
std::string file_sha256(const std::string& path);

}  // namespace turan
