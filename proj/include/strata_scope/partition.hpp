#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace strata_scope {

// Subsets of [n] are bitmasks: element i (1-based) is bit i-1.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundSize = 64;

constexpr Mask element_bit(int element) { return Mask{1} << (element - 1); }
constexpr Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
constexpr int lowest_element(Mask m) { return std::countr_zero(m) + 1; }
constexpr int mask_size(Mask m) { return std::popcount(m); }
constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Elements of `m` in ascending order.
std::vector<int> mask_elements(Mask m);

// Caps on exhaustive enumerations. `force` lifts the default cap.
struct EnumerationLimits {
  bool force = false;
};

inline constexpr int kPartitionCap = 12;
inline constexpr int kChainCap = 8;

// A partition of [n]. Blocks are stored sorted by their minimum element,
// which is the canonical presentation; two partitions are equal iff their
// block vectors are equal.
class SetPartition {
 public:
  SetPartition() = default;

  // Validates (disjoint, nonempty, covering [n]) and canonicalizes.
  static SetPartition from_blocks(int n, std::vector<Mask> blocks);
  static SetPartition bottom(int n);  // one block
  static SetPartition top(int n);     // all singletons

  int ground_size() const noexcept { return n_; }
  std::span<const Mask> blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  bool is_bottom() const noexcept { return blocks_.size() == 1; }
  bool is_top() const noexcept { return static_cast<int>(blocks_.size()) == n_; }
  bool has_block(Mask block) const noexcept;
  Mask block_of(int element) const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b);

 private:
  SetPartition(int n, std::vector<Mask> blocks) : n_(n), blocks_(std::move(blocks)) {}

  int n_ = 0;
  std::vector<Mask> blocks_;
};

struct SetPartitionHash {
  std::size_t operator()(const SetPartition& p) const noexcept;
};

// Text grammar: blocks separated by '|'. Within a block, elements are either
// comma-separated decimals ("1,10") or, when n <= 9, juxtaposed digits ("12").
SetPartition parse_partition(std::string_view text, int n);
std::string format_partition(const SetPartition& p);
// A single block in partition notation ("123" or "1,2,3").
std::string format_block(Mask block, int n);
Mask parse_block(std::string_view text, int n);

// rho1 <= rho2 iff every block of rho2 lies inside a block of rho1. The
// one-block partition is the minimum.
bool leq(const SetPartition& a, const SetPartition& b);
bool less(const SetPartition& a, const SetPartition& b);
// Finest common coarsening.
SetPartition meet(const SetPartition& a, const SetPartition& b);
// Common refinement by pairwise block intersections.
SetPartition join(const SetPartition& a, const SetPartition& b);

// All partitions of [n], ordered by block count, then canonical text.
std::vector<SetPartition> enumerate_partitions(int n, EnumerationLimits limits = {});
void for_each_partition(int n, const std::function<void(const SetPartition&)>& visit,
                        EnumerationLimits limits = {});

// A chain rho_1 < rho_2 < ... (coarsest first).
struct Chain {
  int ground_size = 0;
  std::vector<SetPartition> elements;

  bool empty() const noexcept { return elements.empty(); }
  std::size_t size() const noexcept { return elements.size(); }
  const SetPartition& max() const { return elements.back(); }
  bool contains(const SetPartition& p) const;

  friend bool operator==(const Chain&, const Chain&) = default;
};

bool is_strict_chain(std::span<const SetPartition> elements);
std::string format_chain(const Chain& chain);

struct ChainOptions {
  // Prepend the one-block partition to every chain (and never list it among
  // the remaining elements).
  bool require_bottom = false;
  // Emit the empty chain (which is {bottom} under require_bottom).
  bool allow_empty = false;
};

// The partition lattice of [n] materialized for chain enumeration. Elements
// are indexed in enumerate_partitions order.
class PartitionLattice {
 public:
  explicit PartitionLattice(int n, EnumerationLimits limits = {});

  int ground_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const SetPartition& at(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const SetPartition& p) const;
  // Indices of strict refinements (elements strictly above i), ascending.
  std::span<const std::uint32_t> above(std::size_t i) const { return above_[i]; }

  // Depth-first walk over all chains starting with the given prefix (already
  // a chain, as lattice indices). The prefix itself is visited first; each
  // extension appends an element strictly above the current maximum, trying
  // candidates in lattice order.
  void for_each_chain_from(std::vector<std::uint32_t>& prefix,
                           const std::function<void(std::span<const std::uint32_t>)>& visit) const;

  Chain to_chain(std::span<const std::uint32_t> indices) const;

 private:
  int n_;
  std::vector<SetPartition> elements_;
  std::vector<std::vector<std::uint32_t>> above_;
  std::unordered_map<SetPartition, std::uint32_t, SetPartitionHash> index_;
};

void for_each_chain(int n, ChainOptions options, const std::function<void(const Chain&)>& visit,
                    EnumerationLimits limits = {});
std::vector<Chain> enumerate_chains(int n, ChainOptions options, EnumerationLimits limits = {});

// Pair (rho, B) with B a block of rho.
struct BlockPointer {
  SetPartition partition;
  Mask block = 0;

  friend bool operator==(const BlockPointer&, const BlockPointer&) = default;
};

// Embeds partitions of [n] into partitions of [n+1], adjoining {n+1} as a block.
SetPartition adjoin_singleton(const SetPartition& rho);
// Inverse of adjoin_singleton on its image, or the block pointer obtained by deleting
// n+1 from its block.
std::variant<SetPartition, BlockPointer> classify_extension(const SetPartition& extended);
// Inverse of classify_extension on block pointers: puts n+1 into B.
SetPartition extend_into_block(const BlockPointer& pointer);

}  // namespace strata_scope
