#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "strata_scope/nest.hpp"
#include "strata_scope/tree.hpp"

namespace strata_scope {

// W and T are the resolutions (nests always contain the one-block
// partition); the degenerations are the full polydiagonal compactifications.
enum class Space { W, T, PolyDegEdgeless, PolyDegComplete };

Space parse_space(std::string_view text);
std::string_view space_name(Space space);
Graph graph_of(Space space);
bool requires_bottom(Space space);
// Dimension of the space itself (curves, so dim X = 1 for the degenerations).
int space_dimension(Space space, int n);

struct StratumRecord {
  Space space = Space::W;
  Nest nest;
  int codim = 0;
  int dim = 0;
};

// Codimension excludes the one-block partition for W and T.
StratumRecord make_record(Space space, const Nest& nest);
MarkedTree dual_tree(const StratumRecord& record);    // unstabilized
MarkedTree stable_tree(const StratumRecord& record);  // stabilized

// Records in enumeration order (unsorted), streamed.
void for_each_stratum(Space space, int n, const std::function<void(const StratumRecord&)>& visit,
                      EnumerationLimits limits = {});
// All records sorted by (codim, nest text).
std::vector<StratumRecord> strata(Space space, int n, EnumerationLimits limits = {});
std::vector<StratumRecord> divisor_strata(Space space, int n, EnumerationLimits limits = {});

// The stratum of b lies in the closure of the stratum of a.
bool closure_leq(const StratumRecord& a, const StratumRecord& b);

// Covering pairs (i, j) of closure_leq among sorted records: nest(j) is
// nest(i) plus one element.
std::vector<std::pair<std::size_t, std::size_t>> closure_covers(const std::vector<StratumRecord>& records);

}  // namespace strata_scope
