#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata_scope/nest.hpp"
#include "strata_scope/partition.hpp"

namespace strata_scope {

// Linear model of a subvariety of A^1 x X^m: the t-coordinate is either
// pinned to 0 or free, and the X^m part is the polydiagonal of `shape`.
enum class TFactor : std::uint8_t { Zero, Full };

struct SymbolicSubvariety {
  int ambient = 0;
  TFactor t = TFactor::Full;
  SetPartition shape;

  friend bool operator==(const SymbolicSubvariety&, const SymbolicSubvariety&) = default;
};

std::string format_subvariety(const SymbolicSubvariety& v);

SymbolicSubvariety intersect(const SymbolicSubvariety& a, const SymbolicSubvariety& b);
// a contains b as a subvariety.
bool contains(const SymbolicSubvariety& a, const SymbolicSubvariety& b);
// d * (m - #blocks) + (1 if t is pinned), where d = dim X.
int codim(const SymbolicSubvariety& v, int d = 1);
// Codimension of the intersection equals the sum of codimensions.
bool is_transverse(std::span<const SymbolicSubvariety> collection, int d = 1);

// An element of an index set: a partition (pinned t, polydiagonal) or an FM
// set (free t, small diagonal of the set).
struct ArrangementIndex {
  enum class Kind : std::uint8_t { Partition, Set };
  Kind kind = Kind::Partition;
  SetPartition partition;
  Mask set = 0;

  static ArrangementIndex of(SetPartition p) { return {Kind::Partition, std::move(p), 0}; }
  static ArrangementIndex of_set(Mask s) { return {Kind::Set, {}, s}; }

  friend bool operator==(const ArrangementIndex&, const ArrangementIndex&) = default;
};

std::string format_index(const ArrangementIndex& index);
SymbolicSubvariety subvariety_of(const ArrangementIndex& index, int ambient);

// Base: partitions of [n] (plus FM sets of [n] on the complete graph), in
// A^1 x X^n. Lifted: partitions of [n+1] plus FM sets of [n]. Pointed:
// partitions of [n+1] plus the FM sets of [n+1] other than pairs {i, n+1}.
enum class BuildingVariant { Base, Lifted, Pointed };

struct BuildingSet {
  int n = 0;
  Graph graph = Graph::Complete;
  BuildingVariant variant = BuildingVariant::Base;
  int ambient = 0;
  std::vector<ArrangementIndex> items;
};

BuildingSet building_set(int n, Graph graph, BuildingVariant variant);

enum class EnumerationKind { Zl, LzlZ, ZzL };
EnumerationKind parse_enumeration_kind(std::string_view text);
std::string_view enumeration_kind_name(EnumerationKind kind);

// An ordering of a building set. `segments[i]` names the block of the
// ordering entry i belongs to: "l", "z", "l*", "z*" or "L".
struct Enumeration {
  int n = 0;
  Graph graph = Graph::Complete;
  BuildingVariant variant = BuildingVariant::Base;
  int ambient = 0;
  std::vector<ArrangementIndex> order;
  std::vector<std::string> segments;
  std::optional<std::size_t> bar;  // shuffled enumerations only
};

// The FM order used for z and z*: larger sets first, ties by text.
void fm_order(std::vector<Mask>& sets);

// zl orders the base index set; lzl*z* and zz*L order the pointed one.
Enumeration standard_enumeration(int n, Graph graph, EnumerationKind kind);

// Moves the meet of the two l* entries (which must share their partition of
// [n] and differ in the block holding n+1) to the front, followed by the l*
// entries before the fiber of that partition, then l and z; everything from
// that fiber on is left in place.
Enumeration shuffled_enumeration(const Enumeration& base, const SetPartition& first,
                                 const SetPartition& second);

// Each index of the enumeration's building set appears exactly once.
bool is_permutation_of_index_set(const Enumeration& e);

struct LiWitness {
  std::size_t segment_length = 0;
  std::vector<std::size_t> subset;   // positions in the order, ascending
  std::vector<std::size_t> minimal;  // minimal members containing the intersection
};

struct LiResult {
  bool ok = true;
  std::optional<LiWitness> witness;
  std::size_t classes_checked = 0;
};

// For every initial segment and every intersection of members of it, the
// minimal members containing that intersection must meet transversally.
// Intersections are tracked as closure classes instead of raw subsets; the
// first failure is reported with the lexicographically least generating
// subset found for the failing class.
LiResult check_li_condition(const Enumeration& e, int d = 1);

// Same verdict by iterating over every subset of every initial segment.
// Exponential; for small checks only.
LiResult check_li_condition_exhaustive(const Enumeration& e, int d = 1);

struct IncidenceElement {
  SetPartition partition;
  int dimension = 0;  // projective dimension, blocks - 2
};

struct IncidenceReport {
  int n = 0;
  std::vector<IncidenceElement> elements;
  // (i, j): element i lies in element j (i coarser than j), i != j.
  std::vector<std::pair<std::size_t, std::size_t>> incidences;
  // For each point (dimension 0), the number of lines through it.
  std::vector<std::pair<std::size_t, int>> point_multiplicities;
  std::size_t lines = 0;
  std::size_t points = 0;
};

IncidenceReport projective_incidence(int n);

}  // namespace strata_scope
