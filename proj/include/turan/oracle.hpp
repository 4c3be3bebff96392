#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// search code with the production routines and are only meant for tiny
// inputs.

#include <cstdint>
#include <vector>

#include "turan/hypergraph.hpp"
#include "turan/rational.hpp"

namespace turan::oracle {

/// max over all edge subsets with >= 2 edges of (e - 1) / (v - r).
Rational r_density(const Hypergraph& h);

/// Distinct image edge sets over all injective vertex maps F -> G.
/// Each set is a bitmask over G's edges, so G must have at most 64 edges.
std::vector<std::uint64_t> copy_masks(const Hypergraph& g, const Hypergraph& f);
std::uint64_t count_copies(const Hypergraph& g, const Hypergraph& f);

/// Largest F-free edge subset, by scanning all subsets of E(G).
std::size_t exact_ex(const Hypergraph& g, const Hypergraph& f);

/// Size of a largest 3-AP-free subset of [1, n], by plain subset scan.
std::size_t max_progression_free(int n);

bool progression_free(const std::vector<int>& sorted_elements);

}  // namespace turan::oracle
