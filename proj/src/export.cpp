#include "strata_scope/export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace strata_scope {

using nlohmann::json;

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string rpad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

char tag_letter(ScaleTag tag) {
  switch (tag) {
    case ScaleTag::Infinite: return 'I';
    case ScaleTag::Finite: return 'F';
    case ScaleTag::Zero: return 'Z';
    case ScaleTag::None: break;
  }
  return '-';
}

json nest_json(const Nest& nest) {
  json chain = json::array();
  for (const auto& p : nest.chain.elements) chain.push_back(format_partition(p));
  json sets = json::array();
  for (Mask s : nest.sets) sets.push_back(format_fm_set(s));
  return {{"chain", chain}, {"sets", sets}, {"text", format_nest(nest)}};
}

json tree_value(const MarkedTree& t) {
  json vertices = json::array();
  for (std::size_t v = 0; v < t.size(); ++v) {
    const TreeVertex& x = t[v];
    json item{{"id", v},
              {"parent", x.parent},
              {"tag", v == 0 ? "root" : std::string(tag_name(x.tag))},
              {"legs", mask_elements(x.legs)},
              {"block", format_block(x.block, t.ground_size)},
              {"children", x.children}};
    if (x.level >= 0) item["level"] = x.level;
    vertices.push_back(std::move(item));
  }
  return {{"n", t.ground_size}, {"vertices", vertices}, {"canonical_form", canonical_form(t)}};
}

std::string legs_text(Mask legs) {
  std::string out;
  for (int e : mask_elements(legs)) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

void outline(const MarkedTree& t, int v, int depth, std::ostringstream& out) {
  const TreeVertex& x = t[static_cast<std::size_t>(v)];
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (v == 0) {
    out << '*';
  } else {
    out << tag_letter(x.tag) << ' ' << format_block(x.block, t.ground_size);
  }
  if (x.legs != 0) out << "  legs " << legs_text(x.legs);
  out << '\n';
  for (int c : x.children) outline(t, c, depth + 1, out);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string optional_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "json") return OutputFormat::Json;
  if (text == "dot") return OutputFormat::Dot;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected table, json or dot)");
}

std::string tree_text(const MarkedTree& t) {
  std::ostringstream out;
  if (!t.vertices.empty()) outline(t, 0, 0, out);
  return out.str();
}

std::string tree_json(const MarkedTree& t) {
  json j = tree_value(t);
  j["schema_version"] = kSchemaVersion;
  return dump(j);
}

std::string tree_dot(const MarkedTree& t, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n  node [shape=circle];\n";
  for (std::size_t v = 0; v < t.size(); ++v) {
    const TreeVertex& x = t[v];
    const std::string label =
        v == 0 ? "*" : std::string(1, tag_letter(x.tag)) + "\\n" + format_block(x.block, t.ground_size);
    out << "  v" << v << " [label=\"" << label << "\"";
    if (v == 0) out << ", shape=doublecircle";
    out << "];\n";
    for (int e : mask_elements(x.legs)) {
      out << "  leg" << e << " [label=\"" << e << "\", shape=plaintext];\n";
      out << "  v" << v << " -> leg" << e << " [arrowhead=none];\n";
    }
    for (int c : x.children) out << "  v" << v << " -> v" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string strata_table(const std::vector<StratumRecord>& records) {
  std::size_t width = 4;
  for (const auto& r : records) width = std::max(width, format_nest(r.nest).size());
  std::ostringstream out;
  out << pad("nest", width) << "  codim  dim  stable tree\n";
  for (const auto& r : records) {
    out << pad(format_nest(r.nest), width) << "  " << rpad(std::to_string(r.codim), 5) << "  "
        << rpad(std::to_string(r.dim), 3) << "  " << canonical_form(stable_tree(r)) << '\n';
  }
  out << records.size() << (records.size() == 1 ? " stratum\n" : " strata\n");
  return out.str();
}

std::string strata_json(Space space, int n, const std::vector<StratumRecord>& records) {
  json items = json::array();
  for (const auto& r : records) {
    items.push_back({{"space", space_name(space)},
                     {"n", n},
                     {"nest", nest_json(r.nest)},
                     {"codim", r.codim},
                     {"dim", r.dim},
                     {"tree", tree_value(dual_tree(r))},
                     {"stable_tree", tree_value(stable_tree(r))}});
  }
  return dump({{"schema_version", kSchemaVersion},
               {"space", space_name(space)},
               {"n", n},
               {"count", records.size()},
               {"records", items}});
}

std::string strata_dot(const std::vector<StratumRecord>& records) {
  std::ostringstream out;
  out << "digraph strata {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << "  s" << i << " [label=\"" << dot_escape(format_nest(records[i].nest)) << "\\ncodim "
        << records[i].codim << "\"];\n";
  }
  // Edges point from a stratum to the larger stratum whose closure holds it.
  for (auto [a, b] : closure_covers(records)) out << "  s" << b << " -> s" << a << ";\n";
  out << "}\n";
  return out.str();
}

std::string resolution_table(const ResolutionReport& r) {
  std::ostringstream out;
  const char* map_name = r.space == Space::W ? "wn -> scaled curves with collisions"
                                              : "tn -> scaled curves with distinct points";
  out << "resolution " << map_name << ", n = " << r.n << "\n";
  out << "  strata                 " << r.stratum_count << "\n";
  out << "  target strata          " << r.targets.size() << "\n";
  out << "  exceptional strata     " << r.exceptional.size() << "\n";
  out << "  max fiber dim          " << r.max_fiber << "\n";
  out << "  birational model       " << (r.is_birational_model ? "yes" : "no") << "\n";
  out << "  exceptional min codim  " << optional_text(r.exceptional_min_codim) << "\n";
  out << "  locus min codim        " << optional_text(r.exceptional_locus_min_codim) << "\n";
  out << "  small                  " << (r.small ? "yes" : "no") << "\n";
  out << "  nontrivial             " << (r.nontrivial ? "yes" : "no") << "\n";
  out << "  ih small               " << (r.ih.ok ? "yes" : "no");
  if (r.ih.witness) out << " (witness r = " << *r.ih.witness << ")";
  out << "\n";

  out << "\nih levels\n  r  codim  bound  ok\n";
  for (const auto& l : r.ih.levels) {
    out << "  " << l.r << "  " << rpad(std::to_string(l.codim), 5) << "  " << rpad(std::to_string(2 * l.r), 5)
        << "  " << (l.ok ? "yes" : "no") << "\n";
  }

  out << "\nstrata by codim and fiber dim\n  codim  fiber  count\n";
  for (const auto& [key, count] : r.codim_fiber_counts) {
    out << "  " << rpad(std::to_string(key.first), 5) << "  " << rpad(std::to_string(key.second), 5) << "  "
        << count << "\n";
  }

  out << "\nconsistency\n";
  out << "  divisor strata with positive fiber   " << r.divisor_rows_with_positive_fiber << "\n";
  out << "  star targets with several preimages  " << r.star_targets_with_several_preimages << "\n";
  out << "  unstable targets                     " << r.unstable_targets << "\n";
  out << "  grouping violations                  " << r.grouping_violations << "\n";

  if (r.n == 4) {
    out << "\nexample n = 4: " << r.exceptional.size() << " exceptional strata, each a curve over a point\n";
    std::size_t width = 4;
    for (const auto& row : r.exceptional) width = std::max(width, row.nest.size());
    out << "  " << pad("nest", width) << "  codim  fiber  target point\n";
    for (const auto& row : r.exceptional) {
      out << "  " << pad(row.nest, width) << "  " << rpad(std::to_string(row.codim), 5) << "  "
          << rpad(std::to_string(row.fiber_dim), 5) << "  " << r.targets[row.target].form << "\n";
    }
  }

  if (!r.rows.empty()) {
    std::size_t width = 4;
    for (const auto& row : r.rows) width = std::max(width, row.nest.size());
    out << "\nrows\n  " << pad("nest", width) << "  codim  target  tdim  fiber\n";
    for (const auto& row : r.rows) {
      out << "  " << pad(row.nest, width) << "  " << rpad(std::to_string(row.codim), 5) << "  "
          << rpad(std::to_string(row.target), 6) << "  " << rpad(std::to_string(row.target_dim), 4) << "  "
          << rpad(std::to_string(row.fiber_dim), 5) << "\n";
    }
  }
  return out.str();
}

std::string resolution_json(const ResolutionReport& r) {
  auto row_json = [](const ResolutionRow& row) {
    return json{{"nest", row.nest},
                {"codim", row.codim},
                {"target", row.target},
                {"target_dim", row.target_dim},
                {"fiber_dim", row.fiber_dim}};
  };
  json exceptional = json::array();
  for (const auto& row : r.exceptional) exceptional.push_back(row_json(row));
  json levels = json::array();
  for (const auto& l : r.ih.levels) levels.push_back({{"r", l.r}, {"codim", l.codim}, {"ok", l.ok}});
  json histogram = json::array();
  for (const auto& [key, count] : r.codim_fiber_counts) {
    histogram.push_back({{"codim", key.first}, {"fiber_dim", key.second}, {"count", count}});
  }
  json j{{"schema_version", kSchemaVersion},
         {"space", space_name(r.space)},
         {"n", r.n},
         {"strata", r.stratum_count},
         {"target_strata", r.targets.size()},
         {"exceptional", exceptional},
         {"codim_fiber_counts", histogram},
         {"verdicts",
          {{"is_birational_model", r.is_birational_model},
           {"exceptional_min_codim", optional_json(r.exceptional_min_codim)},
           {"exceptional_locus_min_codim", optional_json(r.exceptional_locus_min_codim)},
           {"small", r.small},
           {"nontrivial", r.nontrivial},
           {"max_fiber_dim", r.max_fiber},
           {"ih_small", r.ih.ok},
           {"ih_witness", optional_json(r.ih.witness)},
           {"ih_levels", levels}}},
         {"consistency",
          {{"divisor_strata_with_positive_fiber", r.divisor_rows_with_positive_fiber},
           {"star_targets_with_several_preimages", r.star_targets_with_several_preimages},
           {"unstable_targets", r.unstable_targets},
           {"grouping_violations", r.grouping_violations}}}};
  if (!r.rows.empty()) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(row_json(row));
    j["rows"] = rows;
    json targets = json::array();
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      const TargetGroup& g = r.targets[i];
      json item{{"id", i},
                {"form", g.form},
                {"dim", g.dim},
                {"star", g.star},
                {"preimage_count", g.preimage_count},
                {"max_fiber_dim", g.max_fiber},
                {"min_codim", g.min_codim},
                {"first_preimage", g.first_preimage}};
      if (!g.preimages.empty()) item["preimages"] = g.preimages;
      targets.push_back(std::move(item));
    }
    j["targets"] = targets;
  }
  return dump(j);
}

std::string li_table(const Enumeration& e, const LiResult& result) {
  std::ostringstream out;
  out << "enumeration of " << e.order.size() << " indices, n = " << e.n << ", graph " << graph_name(e.graph)
      << "\n  pos  segment  index\n";
  for (std::size_t i = 0; i < e.order.size(); ++i) {
    out << "  " << rpad(std::to_string(i), 3) << "  " << pad(e.segments[i], 7) << "  " << format_index(e.order[i]);
    if (e.bar && *e.bar == i) out << "  (bar)";
    out << "\n";
  }
  out << "condition " << (result.ok ? "holds" : "fails") << " (" << result.classes_checked
      << " intersections outside the set checked)\n";
  if (result.witness) {
    const LiWitness& w = *result.witness;
    out << "witness: initial segment of length " << w.segment_length << ", J = {";
    for (std::size_t i = 0; i < w.subset.size(); ++i) out << (i ? ", " : "") << format_index(e.order[w.subset[i]]);
    out << "}, minimal members {";
    for (std::size_t i = 0; i < w.minimal.size(); ++i) out << (i ? ", " : "") << format_index(e.order[w.minimal[i]]);
    out << "}\n";
  }
  return out.str();
}

std::string li_json(const Enumeration& e, const LiResult& result) {
  json order = json::array();
  for (std::size_t i = 0; i < e.order.size(); ++i) {
    order.push_back({{"index", format_index(e.order[i])}, {"segment", e.segments[i]}});
  }
  json j{{"schema_version", kSchemaVersion},
         {"n", e.n},
         {"graph", graph_name(e.graph)},
         {"order", order},
         {"bar", e.bar ? json(*e.bar) : json(nullptr)},
         {"ok", result.ok},
         {"classes_checked", result.classes_checked}};
  if (result.witness) {
    json subset = json::array(), minimal = json::array();
    for (auto i : result.witness->subset) subset.push_back(format_index(e.order[i]));
    for (auto i : result.witness->minimal) minimal.push_back(format_index(e.order[i]));
    j["witness"] = {{"segment_length", result.witness->segment_length}, {"subset", subset}, {"minimal", minimal}};
  } else {
    j["witness"] = nullptr;
  }
  return dump(j);
}

std::string incidence_table(const IncidenceReport& r) {
  std::ostringstream out;
  out << "projective arrangement, n = " << r.n << ": " << r.lines << " lines, " << r.points << " points\n";
  std::size_t triple = 0, double_points = 0;
  for (auto [p, m] : r.point_multiplicities) {
    if (m == 3) ++triple;
    if (m == 2) ++double_points;
  }
  if (r.n == 4) out << "  " << triple << " triple points, " << double_points << " double points\n";
  out << "  element        dim  lies on\n";
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    std::string on;
    for (auto [a, b] : r.incidences) {
      if (a == i) on += (on.empty() ? "" : ", ") + format_partition(r.elements[b].partition);
    }
    out << "  " << pad(format_partition(r.elements[i].partition), 13) << "  " << rpad(std::to_string(r.elements[i].dimension), 3)
        << "  " << on << "\n";
  }
  out << "  point          lines through it\n";
  for (auto [p, m] : r.point_multiplicities) {
    out << "  " << pad(format_partition(r.elements[p].partition), 13) << "  " << m << "\n";
  }
  return out.str();
}

std::string incidence_json(const IncidenceReport& r) {
  json elements = json::array();
  for (const auto& e : r.elements) elements.push_back({{"partition", format_partition(e.partition)}, {"dimension", e.dimension}});
  json incidences = json::array();
  for (auto [a, b] : r.incidences) incidences.push_back({a, b});
  json points = json::array();
  for (auto [p, m] : r.point_multiplicities) points.push_back({{"point", format_partition(r.elements[p].partition)}, {"lines", m}});
  return dump({{"schema_version", kSchemaVersion},
               {"n", r.n},
               {"lines", r.lines},
               {"points", r.points},
               {"elements", elements},
               {"incidences", incidences},
               {"point_multiplicities", points}});
}

std::string count_table(const CountReport& r) {
  std::ostringstream out;
  out << "n = " << r.n << "\n";
  out << "  partitions (Bell number)   " << r.partitions << "\n";
  out << "  chains (nonempty)          " << r.chains << "\n";
  out << "  chains with one-block      " << r.chains_with_bottom << "\n";
  const std::pair<const char*, const CountPolynomial*> rows[] = {
      {"wn", &r.w}, {"tn", &r.t}, {"polydeg-edgeless", &r.polydeg_edgeless}, {"polydeg-complete", &r.polydeg_complete}};
  out << "strata per codim\n";
  for (auto [name, p] : rows) {
    out << "  " << pad(name, 17) << "  total " << rpad(std::to_string(evaluate_at_one(*p)), 10) << "  by codim";
    for (auto c : *p) out << ' ' << c;
    out << "\n";
  }
  return out.str();
}

std::string count_json(const CountReport& r) {
  return dump({{"schema_version", kSchemaVersion},
               {"n", r.n},
               {"partitions", r.partitions},
               {"chains", r.chains},
               {"chains_with_bottom", r.chains_with_bottom},
               {"strata_by_codim",
                {{"wn", r.w}, {"tn", r.t}, {"polydeg-edgeless", r.polydeg_edgeless}, {"polydeg-complete", r.polydeg_complete}}}});
}

}  // namespace strata_scope
