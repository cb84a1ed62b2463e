#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strata_scope/partition.hpp"

namespace strata_scope {

// The two graphs on [n] the stratifications are built from: no edges (only
// partition data) or complete (partition data plus Fulton-MacPherson sets).
enum class Graph { Edgeless, Complete };

std::string_view graph_name(Graph g);

inline constexpr int kNestCapComplete = 7;
inline constexpr int kNestCapEdgeless = 8;

// Subsets of [n] with at least two elements, ascending by mask.
std::vector<Mask> fm_sets(int n);
// Subsets of [n+1] with at least two elements, excluding the pairs {i, n+1}.
std::vector<Mask> fm_sets_pointed(int n);

// Any two members are disjoint or comparable.
bool is_nested(std::span<const Mask> family);

// A stratum index: a chain of partitions plus a nested family of FM sets.
// `sets` is kept in canonical order: by minimum element, then larger sets
// first, then by mask.
struct Nest {
  int ground_size = 0;
  Graph graph = Graph::Complete;
  Chain chain;
  std::vector<Mask> sets;

  std::size_t size() const noexcept { return chain.size() + sets.size(); }
  bool has_bottom() const { return !chain.empty() && chain.elements.front().is_bottom(); }

  friend bool operator==(const Nest&, const Nest&) = default;
};

void sort_fm_sets(std::vector<Mask>& sets);

struct NestValidation {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return ok; }
};

// Checks the nest clauses in order and names the first one violated:
// ground size, chain order, graph, set size, duplicates, nestedness with the
// blocks of the finest partition, and containment of every set in a block.
NestValidation validate_nest(const Nest& candidate);

// Every nest of the given graph, each once. With `require_bottom`, the chain
// always starts at the one-block partition. Order: nests with empty chain
// first (complete graph without require_bottom only), then per chain in
// enumerate_chains order, the product of per-block nested families.
void for_each_nest(int n, Graph graph, bool require_bottom,
                   const std::function<void(const Nest&)>& visit, EnumerationLimits limits = {});
std::vector<Nest> enumerate_nests(int n, Graph graph, bool require_bottom,
                                  EnumerationLimits limits = {});

// All nested families of subsets of [k] with at least two elements each.
std::vector<std::vector<Mask>> nested_families(int k);

// Members of the nest's sets contained in `block`, which must be a block of
// the finest chain element.
std::vector<Mask> restrict_fm(const Nest& nest, Mask block);

// a is a subnest of b: chain and set parts both contained.
bool is_subnest(const Nest& a, const Nest& b);

// Text grammar: items separated by ';'. Partition items use the partition
// grammar and are listed coarsest first; FM sets are brace-delimited, e.g.
// "{1,3}". "" and "(empty)" denote the empty nest.
Nest parse_nest(std::string_view text, int n, Graph graph = Graph::Complete);
std::string format_nest(const Nest& nest);
std::string format_fm_set(Mask set);

}  // namespace strata_scope
