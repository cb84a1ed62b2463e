#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "strata_scope/arrangement.hpp"
#include "strata_scope/counting.hpp"
#include "strata_scope/errors.hpp"
#include "strata_scope/export.hpp"
#include "strata_scope/nest.hpp"
#include "strata_scope/resolution.hpp"
#include "strata_scope/strata.hpp"
#include "strata_scope/tree.hpp"
#include "strata_scope/verify.hpp"

using namespace strata_scope;

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kCapExceeded = 3, kModelInconsistency = 4 };

// Default caps of the exhaustive commands; --force raises both to kForcedCap.
constexpr int kCliCapComplete = 6;
constexpr int kCliCapEdgeless = 7;
constexpr int kForcedCap = 8;

struct RunConfig {
  int n = 0;
  std::string space = "wn";
  std::string graph = "complete";
  std::string format = "table";
  bool force = false;
  unsigned threads = 0;
  std::string output;
  // command specific
  std::string nest;
  bool stabilized = false;
  int n_max = 5;
  std::string suite;
  std::string enumeration = "zl";
  int d = 1;
  bool rows = false;
  int target_shift = 0;
};

Graph parse_graph(const std::string& text) {
  if (text == "complete") return Graph::Complete;
  if (text == "edgeless") return Graph::Edgeless;
  throw std::invalid_argument("unknown graph '" + text + "' (expected complete or edgeless)");
}

void write_output(const RunConfig& config, const std::string& text) {
  if (config.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + config.output);
  out << text;
}

void check_n(int n, int minimum = 1) {
  if (n < minimum) throw std::invalid_argument("--n must be at least " + std::to_string(minimum));
}

// Exhaustive commands refuse n beyond the default caps unless forced.
void check_cap(int n, Graph graph, bool force, const char* what) {
  const int cap = force ? kForcedCap : (graph == Graph::Complete ? kCliCapComplete : kCliCapEdgeless);
  if (n > cap) {
    throw CapExceeded(std::string(what) + " for n = " + std::to_string(n) + " on the " +
                      std::string(graph_name(graph)) + " graph exceeds the cap " + std::to_string(cap) +
                      (force ? "" : " (use --force to raise it to " + std::to_string(kForcedCap) + ")"));
  }
  if (force && n > (graph == Graph::Complete ? kCliCapComplete : kCliCapEdgeless)) {
    const auto counts = count_report(n, {true});
    const auto total = evaluate_at_one(graph == Graph::Complete ? counts.t : counts.w);
    std::cerr << "warning: n = " << n << " enumerates about " << total << " nests; expect roughly "
              << (total * 400 >> 20) << " MiB of memory\n";
  }
}

int cmd_strata(const RunConfig& c) {
  const Space space = parse_space(c.space);
  const OutputFormat format = parse_output_format(c.format);
  check_n(c.n);
  check_cap(c.n, graph_of(space), c.force, "strata");
  const auto records = strata(space, c.n, {true});
  switch (format) {
    case OutputFormat::Table: write_output(c, strata_table(records)); break;
    case OutputFormat::Json: write_output(c, strata_json(space, c.n, records)); break;
    case OutputFormat::Dot: write_output(c, strata_dot(records)); break;
  }
  return kOk;
}

int cmd_resolve(const RunConfig& c) {
  const Space space = parse_space(c.space);
  if (!requires_bottom(space)) throw std::invalid_argument("resolve takes --space wn or tn");
  const OutputFormat format = parse_output_format(c.format);
  if (format == OutputFormat::Dot) throw std::invalid_argument("resolve supports table and json output");
  check_n(c.n, 2);
  check_cap(c.n, graph_of(space), c.force, "resolve");
  ResolutionOptions options;
  options.threads = c.threads;
  options.keep_rows = c.rows;
  options.keep_preimages = c.rows;
  options.target_dim_shift = c.target_shift;
  options.limits.force = true;
  const auto report = resolution_report(space, c.n, options);
  write_output(c, format == OutputFormat::Json ? resolution_json(report) : resolution_table(report));
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions options;
  options.n_max = c.n_max;
  if (!c.suite.empty()) options.suite = c.suite;
  options.threads = c.threads;
  options.force = c.force;
  if (c.n_max < 1) throw std::invalid_argument("--n-max must be at least 1");
  const auto results = run_verify(options);
  std::ostringstream out;
  bool ok = true;
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-11s %-4s n<=%d  %12llu checks  %8.2fs\n", r.name.c_str(), r.ok ? "pass" : "FAIL",
                  r.n_max, static_cast<unsigned long long>(r.checks), r.seconds);
    out << line;
    if (!r.ok) {
      out << "  counterexample: " << r.counterexample << "\n";
      ok = false;
    }
  }
  out << (ok ? "all suites passed\n" : "verification failed\n");
  write_output(c, out.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_tree(const RunConfig& c) {
  const OutputFormat format = parse_output_format(c.format);
  if (c.n < 1 || c.n > 16) throw std::invalid_argument("tree takes 1 <= n <= 16");
  const Graph graph = parse_graph(c.graph);
  const Nest nest = parse_nest(c.nest, c.n, graph);
  if (const auto v = validate_nest(nest); !v.ok) throw std::invalid_argument("invalid nest: " + v.diagnostic);
  const bool empty = nest.chain.empty() && nest.sets.empty();
  const MarkedTree tree = empty ? root_only_tree(c.n) : grafted_tree(nest, false);
  const MarkedTree stable = empty ? root_only_tree(c.n) : grafted_tree(nest, true);
  switch (format) {
    case OutputFormat::Table: {
      std::string text = "nest " + format_nest(nest) + "\n\ntree\n" + tree_text(tree) + "form " + canonical_form(tree) + "\n";
      if (c.stabilized) text += "\nstabilized tree\n" + tree_text(stable) + "form " + canonical_form(stable) + "\n";
      write_output(c, text);
      break;
    }
    case OutputFormat::Json:
      write_output(c, tree_json(c.stabilized ? stable : tree));
      break;
    case OutputFormat::Dot:
      write_output(c, tree_dot(c.stabilized ? stable : tree, c.stabilized ? "stabilized" : "tree"));
      break;
  }
  return kOk;
}

ArrangementIndex parse_index(const std::string& text, int n) {
  if (text.empty() || text.front() != '{') return ArrangementIndex::of(parse_partition(text, n));
  if (text.back() != '}') throw std::invalid_argument("unterminated set: " + text);
  Mask set = 0;
  std::stringstream in(text.substr(1, text.size() - 2));
  for (std::string item; std::getline(in, item, ',');) set |= parse_block(item, n);
  return ArrangementIndex::of_set(set);
}

// zl | lzlz | zzL | shuffle:<pivot>:<B1>:<B2> | order:<index> <index> ...
// An explicit order permutes the zl index set.
Enumeration build_enumeration(const RunConfig& c, Graph graph) {
  const std::string order_prefix = "order:";
  if (c.enumeration.rfind(order_prefix, 0) == 0) {
    Enumeration e = standard_enumeration(c.n, graph, EnumerationKind::Zl);
    e.order.clear();
    std::stringstream in(c.enumeration.substr(order_prefix.size()));
    for (std::string item; in >> item;) e.order.push_back(parse_index(item, c.n));
    e.segments.assign(e.order.size(), "?");
    if (!is_permutation_of_index_set(e)) throw std::invalid_argument("order is not a permutation of the zl index set");
    return e;
  }
  const std::string prefix = "shuffle:";
  if (c.enumeration.rfind(prefix, 0) != 0) return standard_enumeration(c.n, graph, parse_enumeration_kind(c.enumeration));
  std::vector<std::string> parts;
  std::stringstream in(c.enumeration.substr(prefix.size()));
  for (std::string item; std::getline(in, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("shuffle takes shuffle:<partition>:<block>:<block>");
  const SetPartition pivot = parse_partition(parts[0], c.n);
  const Mask first = parse_block(parts[1], c.n), second = parse_block(parts[2], c.n);
  if (!pivot.has_block(first) || !pivot.has_block(second)) {
    throw std::invalid_argument("shuffle blocks must be blocks of " + format_partition(pivot));
  }
  const Enumeration base = standard_enumeration(c.n, graph, EnumerationKind::LzlZ);
  return shuffled_enumeration(base, extend_into_block({pivot, first}), extend_into_block({pivot, second}));
}

int cmd_li_check(const RunConfig& c) {
  const OutputFormat format = parse_output_format(c.format);
  if (format == OutputFormat::Dot) throw std::invalid_argument("li-check supports table and json output");
  check_n(c.n);
  if (c.d < 1) throw std::invalid_argument("--d must be at least 1");
  const Graph graph = parse_graph(c.graph);
  const int cap = (graph == Graph::Complete ? 4 : 5) + (c.force ? 1 : 0);
  if (c.n > cap) {
    throw CapExceeded("li-check for n = " + std::to_string(c.n) + " exceeds the cap " + std::to_string(cap));
  }
  const Enumeration e = build_enumeration(c, graph);
  const LiResult result = check_li_condition(e, c.d);
  write_output(c, format == OutputFormat::Json ? li_json(e, result) : li_table(e, result));
  return result.ok ? kOk : kCheckFailed;
}

int cmd_arrangement(const RunConfig& c) {
  const OutputFormat format = parse_output_format(c.format);
  if (format == OutputFormat::Dot) throw std::invalid_argument("arrangement supports table and json output");
  check_n(c.n, 3);
  if (c.n > (c.force ? kForcedCap : kCliCapEdgeless)) throw CapExceeded("arrangement for n = " + std::to_string(c.n) + " exceeds the cap");
  const auto report = projective_incidence(c.n);
  write_output(c, format == OutputFormat::Json ? incidence_json(report) : incidence_table(report));
  return kOk;
}

int cmd_count(const RunConfig& c) {
  const OutputFormat format = parse_output_format(c.format);
  if (format == OutputFormat::Dot) throw std::invalid_argument("count supports table and json output");
  check_n(c.n);
  // Counting runs a dynamic program over the lattice, so it goes one step
  // past the enumeration caps.
  if (c.n > (c.force ? kForcedCap + 1 : kForcedCap)) throw CapExceeded("count for n = " + std::to_string(c.n) + " exceeds the cap");
  const auto report = count_report(c.n, {true});
  write_output(c, format == OutputFormat::Json ? count_json(report) : count_table(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strata of partition-lattice compactifications and their resolutions"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub, bool with_n = true) {
    if (with_n) sub->add_option("--n", c.n, "number of marked points")->required();
    sub->add_option("--format", c.format, "table, json or dot");
    sub->add_option("--output", c.output, "write to this file instead of stdout");
    sub->add_flag("--force", c.force, "lift the default size caps");
    sub->add_option("--threads", c.threads, "worker count (default: STRATA_SCOPE_THREADS or all cores)");
  };

  auto* strata_cmd = app.add_subcommand("strata", "list the strata of a space");
  add_common(strata_cmd);
  strata_cmd->add_option("--space", c.space, "wn, tn, polydeg-edgeless or polydeg-complete");

  auto* resolve_cmd = app.add_subcommand("resolve", "analyze the map to the moduli of scaled curves");
  add_common(resolve_cmd);
  resolve_cmd->add_option("--space", c.space, "wn or tn");
  resolve_cmd->add_flag("--rows", c.rows, "include every stratum row and target group");
  // Hidden: shifts every target dimension so tests can reach the inconsistency exit.
  resolve_cmd->add_option("--target-shift", c.target_shift)->group("");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--n-max", c.n_max, "largest n to scan");
  verify_cmd->add_option("--suite", c.suite, "partitions, nests, trees, li, strata or resolution");

  auto* tree_cmd = app.add_subcommand("tree", "draw the dual tree of a nest");
  add_common(tree_cmd);
  tree_cmd->add_option("--nest", c.nest, "nest text, items separated by ';'")->required();
  tree_cmd->add_option("--graph", c.graph, "complete or edgeless");
  tree_cmd->add_flag("--stabilized", c.stabilized, "also show the stabilized tree");

  auto* li_cmd = app.add_subcommand("li-check", "check an enumeration of a building set");
  add_common(li_cmd);
  li_cmd->add_option("--graph", c.graph, "complete or edgeless");
  li_cmd->add_option("--enum", c.enumeration, "zl, lzlz, zzL, shuffle:<partition>:<block>:<block> or order:<index> <index> ...");
  li_cmd->add_option("--d", c.d, "dimension of the curve factor");

  auto* arrangement_cmd = app.add_subcommand("arrangement", "incidences of the projectivized arrangement");
  add_common(arrangement_cmd);

  auto* count_cmd = app.add_subcommand("count", "Bell numbers, chains, nests and strata per codim");
  add_common(count_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*strata_cmd) return cmd_strata(c);
    if (*resolve_cmd) return cmd_resolve(c);
    if (*verify_cmd) return cmd_verify(c);
    if (*tree_cmd) return cmd_tree(c);
    if (*li_cmd) return cmd_li_check(c);
    if (*arrangement_cmd) return cmd_arrangement(c);
    if (*count_cmd) return cmd_count(c);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const ModelInconsistency& e) {
    std::cerr << "model inconsistency: " << e.what() << "\n";
    return kModelInconsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
