#include "strata_scope/strata.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace strata_scope {

Space parse_space(std::string_view text) {
  if (text == "wn") return Space::W;
  if (text == "tn") return Space::T;
  if (text == "polydeg-edgeless") return Space::PolyDegEdgeless;
  if (text == "polydeg-complete") return Space::PolyDegComplete;
  throw std::invalid_argument("unknown space '" + std::string(text) +
                              "' (expected wn, tn, polydeg-edgeless or polydeg-complete)");
}

std::string_view space_name(Space space) {
  switch (space) {
    case Space::W: return "wn";
    case Space::T: return "tn";
    case Space::PolyDegEdgeless: return "polydeg-edgeless";
    case Space::PolyDegComplete: return "polydeg-complete";
  }
  return "?";
}

Graph graph_of(Space space) {
  return (space == Space::W || space == Space::PolyDegEdgeless) ? Graph::Edgeless : Graph::Complete;
}

bool requires_bottom(Space space) { return space == Space::W || space == Space::T; }

int space_dimension(Space space, int n) { return requires_bottom(space) ? n - 1 : n + 1; }

StratumRecord make_record(Space space, const Nest& nest) {
  if (nest.graph != graph_of(space)) throw std::invalid_argument("nest graph does not match the space");
  if (requires_bottom(space) && !nest.has_bottom()) {
    throw std::invalid_argument("strata of " + std::string(space_name(space)) + " need the one-block partition");
  }
  StratumRecord r{space, nest, 0, 0};
  r.codim = static_cast<int>(nest.size()) - (requires_bottom(space) ? 1 : 0);
  r.dim = space_dimension(space, nest.ground_size) - r.codim;
  return r;
}

MarkedTree dual_tree(const StratumRecord& record) {
  if (record.nest.chain.empty() && record.nest.sets.empty()) return root_only_tree(record.nest.ground_size);
  return grafted_tree(record.nest, false);
}

MarkedTree stable_tree(const StratumRecord& record) {
  if (record.nest.chain.empty() && record.nest.sets.empty()) return root_only_tree(record.nest.ground_size);
  return grafted_tree(record.nest, true);
}

void for_each_stratum(Space space, int n, const std::function<void(const StratumRecord&)>& visit,
                      EnumerationLimits limits) {
  for_each_nest(n, graph_of(space), requires_bottom(space),
                [&](const Nest& nest) { visit(make_record(space, nest)); }, limits);
}

std::vector<StratumRecord> strata(Space space, int n, EnumerationLimits limits) {
  std::vector<std::pair<std::pair<int, std::string>, StratumRecord>> keyed;
  for_each_stratum(space, n, [&](const StratumRecord& r) {
    keyed.push_back({{r.codim, format_nest(r.nest)}, r});
  }, limits);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<StratumRecord> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

std::vector<StratumRecord> divisor_strata(Space space, int n, EnumerationLimits limits) {
  std::vector<StratumRecord> out;
  for (auto& r : strata(space, n, limits)) {
    if (r.codim == 1) out.push_back(std::move(r));
  }
  return out;
}

bool closure_leq(const StratumRecord& a, const StratumRecord& b) {
  if (a.space != b.space || a.nest.ground_size != b.nest.ground_size) {
    throw std::invalid_argument("closure_leq compares strata of different spaces");
  }
  return is_subnest(a.nest, b.nest);
}

std::vector<std::pair<std::size_t, std::size_t>> closure_covers(const std::vector<StratumRecord>& records) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) index.emplace(format_nest(records[i].nest), i);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t j = 0; j < records.size(); ++j) {
    const Nest& nest = records[j].nest;
    // Drop one element (never the one-block partition on W and T).
    const std::size_t first = requires_bottom(records[j].space) ? 1 : 0;
    for (std::size_t k = first; k < nest.chain.size(); ++k) {
      Nest smaller = nest;
      smaller.chain.elements.erase(smaller.chain.elements.begin() + static_cast<std::ptrdiff_t>(k));
      if (auto it = index.find(format_nest(smaller)); it != index.end()) covers.emplace_back(it->second, j);
    }
    for (std::size_t k = 0; k < nest.sets.size(); ++k) {
      Nest smaller = nest;
      smaller.sets.erase(smaller.sets.begin() + static_cast<std::ptrdiff_t>(k));
      if (auto it = index.find(format_nest(smaller)); it != index.end()) covers.emplace_back(it->second, j);
    }
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

}  // namespace strata_scope
