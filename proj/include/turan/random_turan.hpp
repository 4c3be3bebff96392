#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "turan/copies.hpp"
#include "turan/hypergraph.hpp"
#include "turan/rational.hpp"

namespace turan {

/// C(n, k), throwing overflow_error when it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The k-subset of rank `rank` in colexicographic order, ascending.
std::vector<Vertex> colex_unrank(std::uint64_t rank, int k);

/// G^r_{n,p}. Kept subsets are found by geometric jumps over their colex
/// ranks, so the cost follows the number of kept edges for small p.
Hypergraph sample_gnp(Vertex n, int r, double p, std::uint64_t seed);

/// Result of the exact maximum pattern-free subgraph search. When the node
/// budget runs out, `lower` and `upper` bracket the answer and exact is false.
struct ExResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = false;
  std::uint64_t copies = 0;
  std::uint64_t nodes = 0;
  std::vector<EdgeIndex> removed;  // a hitting set achieving `lower`
};

inline constexpr std::uint64_t kDefaultNodeBudget = 2'000'000;

/// e(G) minus a minimum set of edges meeting every pattern copy. Branches on
/// the edges of an unhit copy with fewest free edges and bounds with a greedy
/// packing of copies that are disjoint on free edges. Throws BudgetExceeded if
/// the copies cannot be enumerated within copy_budget.
ExResult exact_ex(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t node_budget = kDefaultNodeBudget,
                  std::uint64_t copy_budget = kUnlimited);

/// Same search over copies already enumerated in a host with edge_count edges.
ExResult exact_ex_from_copies(const std::vector<Copy>& copies, std::size_t edge_count,
                              std::uint64_t node_budget = kDefaultNodeBudget);

/// Seeded one-edge-per-copy deletion; the witness is certified pattern-free.
Hypergraph greedy_ex_lower(const Hypergraph& g, const Hypergraph& pattern, std::uint64_t seed,
                           std::uint64_t copy_budget = kUnlimited);

enum class Family { kTightTree, kClique, kCustom };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// lim log_n ex(G^r_{n,p}, F) at p = n^{-r+x}, ignoring o(1) terms.
/// Tight trees (edges without a common vertex): x below k-1, k-1 up to k, then x-1.
/// Cliques K_k^{k-1(+r)}: x below k - k/(k-1), then (x-r)/((r-k+1)(k-1)+1) + k-1
/// up to k - (r-k)/((r-k+1)(k-1)), then x-1. Throws unless 0 < x <= r.
Rational theoretical_exponent(Family family, int r, int k, const Rational& x);

/// The lower-bound curve max{(x-r)/(2r-3) + 2, x-1} claimed in earlier work for
/// the linear triangle expansion when x >= r - 3/2, and x below that. It is a
/// comparison curve, not a result established here.
Rational prior_claim_exponent(int r, const Rational& x);

/// The pattern used by a family: tight trees use the tight k-path with k+1
/// edges (no common vertex) expanded to r; cliques use K_k^{k-1(+r)}.
Hypergraph family_pattern(Family family, int r, int k);

enum class Estimator { kExact, kGreedy, kAuto };

std::string estimator_name(Estimator e);
Estimator parse_estimator(const std::string& name);

struct SweepConfig {
  Family family = Family::kTightTree;
  int r = 3;
  int k = 2;
  std::string pattern;  // pattern spec when family is custom
  std::vector<Vertex> n_values;
  std::vector<double> x_grid;
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::kAuto;
  std::uint64_t copy_budget = 200'000;
  std::uint64_t node_budget = 200'000;
  // Each search node scans every copy, so a cell's node cap is also limited
  // to work_budget / copies.
  std::uint64_t work_budget = 200'000'000;
  bool use_star = true;
  unsigned threads = 1;
};

struct SweepRow {
  Vertex n = 0;
  double x = 0;
  double p = 0;
  std::size_t x_index = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  std::string estimator;  // which bound produced `witness`
  std::size_t witness = 0;
  std::optional<std::size_t> exact;
  double theory = 0;
  double wall_seconds = 0;
  std::string status = "ok";
};

/// One row per (n, x, repetition), ordered by n, then x, then repetition.
/// Per-cell failures are recorded in the row status.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// Resolved pattern for a config.
Hypergraph sweep_pattern(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
extern const char* const kSweepCsvHeader;

/// Inverse of write_sweep_csv (wall times are not stored and read back as 0).
/// Throws ParseError with the line number on malformed input.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double rms_residual = 0;
  std::size_t points = 0;
};

/// Least squares fit of y on x. Throws invalid_argument on fewer than two
/// distinct x values.
SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

struct ExponentFit {
  double x = 0;
  SlopeFit fit;
  double theory = 0;
  std::size_t dropped = 0;  // rows with an empty witness or a failed cell
};

/// Per grid point: slope of log(witness) against log(n).
std::vector<ExponentFit> fit_exponents(const std::vector<SweepRow>& rows);

/// Slope of log(witness) against log(p) over the rows with the given n.
SlopeFit fit_p_slope(const std::vector<SweepRow>& rows, Vertex n);

}  // namespace turan
