#pragma once

#include <string>
#include <vector>

#include "strata_scope/arrangement.hpp"
#include "strata_scope/counting.hpp"
#include "strata_scope/resolution.hpp"
#include "strata_scope/strata.hpp"
#include "strata_scope/tree.hpp"

namespace strata_scope {

// Bumped whenever a JSON layout changes incompatibly.
inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Table, Json, Dot };
OutputFormat parse_output_format(std::string_view text);

// Indented outline, one vertex per line.
std::string tree_text(const MarkedTree& t);
std::string tree_json(const MarkedTree& t);
std::string tree_dot(const MarkedTree& t, const std::string& name = "tree");

std::string strata_table(const std::vector<StratumRecord>& records);
std::string strata_json(Space space, int n, const std::vector<StratumRecord>& records);
// Specialization poset, one edge per covering pair.
std::string strata_dot(const std::vector<StratumRecord>& records);

std::string resolution_table(const ResolutionReport& report);
std::string resolution_json(const ResolutionReport& report);

std::string li_table(const Enumeration& e, const LiResult& result);
std::string li_json(const Enumeration& e, const LiResult& result);

std::string incidence_table(const IncidenceReport& report);
std::string incidence_json(const IncidenceReport& report);

std::string count_table(const CountReport& report);
std::string count_json(const CountReport& report);

}  // namespace strata_scope
