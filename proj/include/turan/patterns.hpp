#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "turan/expansion.hpp"
#include "turan/hypergraph.hpp"
#include "turan/tight_tree.hpp"

namespace turan {

/// Tight k-path with l edges: {i, ..., i+k-1} for i = 0..l-1.
TightTreeWitness tight_path(int k, int l);

/// The tight k-tree made of a central k-edge plus one petal per (k-1)-subset
/// of it. The petals alone form K_k^{k-1(+k)} and span the tree.
struct CliqueTree {
  TightTreeWitness tree;
  std::vector<std::size_t> petals;
};
CliqueTree clique_tree(int k);

/// K_k^{k-1(+r)} built as the r-expansion of the clique tree's petals.
ExpansionPattern clique_expansion(int k, int r);

/// Linear cycle C^r_l: vertices v_0..v_{l(r-1)-1}, edge i covers the r
/// consecutive vertices starting at i(r-1), indices taken cyclically.
Hypergraph linear_cycle(int r, int l);

/// Every tight k-tree with l edges built by attaching each new vertex to some
/// (k-1)-subset of some earlier edge. Vertex i + k - 1 is introduced by edge i.
/// Isomorphic trees appear more than once; the count is k^(l-1) (l-1)!.
std::vector<TightTreeWitness> enumerate_tight_trees(int k, int l);

/// One tree drawn from the same growth process with uniform choices.
TightTreeWitness random_tight_tree(int k, int l, std::uint64_t seed);

/// A pattern resolved from a textual spec. When the pattern comes from a tight
/// tree, `tree` and `subset` describe the tree and the spanning edge subset
/// whose expansion is `graph`.
struct NamedPattern {
  std::string spec;
  Hypergraph graph;
  std::optional<TightTreeWitness> tree;
  std::vector<std::size_t> subset;
};

/// name -> spec lines read from a pattern library file (`name = spec`).
using PatternLibrary = std::map<std::string, std::string>;
PatternLibrary load_pattern_library(const std::string& path);

/// Resolves specs of the form
///   tight_path k=3 l=4 [r=5]
///   tight_pair k=3 [r=4]
///   clique_expansion k=3 r=4
///   linear_cycle r=3 l=5
///   file=path/to/graph.txt
/// or a name defined in `library`.
NamedPattern parse_pattern(const std::string& spec, const PatternLibrary& library = {});

}  // namespace turan
