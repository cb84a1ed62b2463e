#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata_scope/nest.hpp"
#include "strata_scope/strata.hpp"
#include "strata_scope/tree.hpp"

namespace strata_scope {

// Image of a stratum in the moduli space of scaled curves, identified by the
// stabilized grafted tree (the root stands for the marking at infinity).
struct TargetStratum {
  MarkedTree tree;
  std::string form;  // canonical_form(tree)
  int dim = 0;
};

// Requires a valid nest containing the one-block partition.
TargetStratum target_stratum(const Nest& nest);

// Sum over non-root vertices of (children + legs + 1) - 2 for Finite vertices
// and - 3 otherwise. Throws std::invalid_argument on an untagged non-root
// vertex or a negative term.
int target_dim(const MarkedTree& t);

// The root has one child, which has at least two children, all leaves.
bool is_star_tree(const MarkedTree& t);

struct ResolutionRow {
  std::string nest;
  int codim = 0;
  std::uint32_t target = 0;  // index into ResolutionReport::targets
  int target_dim = 0;
  int fiber_dim = 0;
};

struct TargetGroup {
  std::string form;
  int dim = 0;
  bool star = false;
  bool stable = true;
  std::uint64_t preimage_count = 0;
  int max_fiber = 0;
  int min_codim = 0;
  std::string first_preimage;           // least by (codim, nest text)
  std::vector<std::string> preimages;   // only with keep_preimages, sorted
};

struct IhLevel {
  int r = 0;
  int codim = 0;  // codimension of the locus with fibers of dimension >= r
  bool ok = true;  // codim > 2r
};

struct IhVerdict {
  bool ok = true;
  std::optional<int> witness;  // largest failing r
  std::vector<IhLevel> levels;
};

struct ResolutionOptions {
  unsigned threads = 0;  // 0: STRATA_SCOPE_THREADS or hardware default
  bool keep_rows = false;
  bool keep_preimages = false;
  EnumerationLimits limits;
  int target_dim_shift = 0;  // fault injection for tests: added to every target dim
};

struct ResolutionReport {
  Space space = Space::W;
  int n = 0;
  std::uint64_t stratum_count = 0;
  std::vector<ResolutionRow> rows;         // every stratum with keep_rows
  std::vector<ResolutionRow> exceptional;  // fiber_dim > 0
  std::vector<TargetGroup> targets;        // sorted by (dim, form)
  std::map<std::pair<int, int>, std::uint64_t> codim_fiber_counts;
  // Entry f: largest target dim among rows with fiber_dim exactly f, or -1.
  std::vector<int> max_target_dim_by_fiber;

  bool is_birational_model = false;
  std::optional<int> exceptional_min_codim;
  // Minimum codim over every stratum mapping into a target with a positive
  // dimensional fiber somewhere.
  std::optional<int> exceptional_locus_min_codim;
  bool small = true;
  bool nontrivial = false;
  int max_fiber = 0;
  IhVerdict ih;

  // Consistency counters; all zero on a sound model.
  std::uint64_t divisor_rows_with_positive_fiber = 0;
  std::uint64_t star_targets_with_several_preimages = 0;
  std::uint64_t unstable_targets = 0;
  std::uint64_t grouping_violations = 0;
};

// Throws CapExceeded beyond the nest caps and ModelInconsistency on a
// negative fiber dimension. Only W and T are accepted.
ResolutionReport resolution_report(Space space, int n, const ResolutionOptions& options = {});

IhVerdict ih_smallness(const ResolutionReport& report);

// The chain of partitions into fibers of a -> floor((a - 1) / 2^j), from the
// one-block partition (j = ceil(log2 n)) down to all singletons (j = 0).
Nest binary_chain_nest(int n, Graph graph = Graph::Edgeless);
int ceil_log2(int n);

}  // namespace strata_scope
