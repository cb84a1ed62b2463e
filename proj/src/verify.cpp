#include "strata_scope/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <stdexcept>

#include "strata_scope/arrangement.hpp"
#include "strata_scope/counting.hpp"
#include "strata_scope/nest.hpp"
#include "strata_scope/resolution.hpp"
#include "strata_scope/strata.hpp"
#include "strata_scope/tree.hpp"

namespace strata_scope {

namespace {

// Thrown by a suite to report its first counterexample.
struct Failure {
  std::string what;
};

struct Context {
  int n_max;
  bool force;
  unsigned threads;
  std::uint64_t checks = 0;
  int scanned = 0;

  void require(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (!ok) throw Failure{describe()};
  }
  // Largest n a suite scans: the requested maximum, clipped to the suite's
  // default cap (or the hard cap with force).
  int upto(int default_cap, int hard_cap) const { return std::min(n_max, force ? hard_cap : default_cap); }
  void note(int n) { scanned = std::max(scanned, n); }
};

std::vector<std::uint64_t> bell_numbers(int max) {
  // Bell triangle: each row starts with the previous row's last entry.
  std::vector<std::uint64_t> bell{1}, row{1};
  for (int i = 1; i <= max; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    bell.push_back(row.back());
    row = std::move(next);
  }
  return bell;
}

void partitions_suite(Context& c) {
  const auto bell = bell_numbers(10);
  for (int n = 1; n <= c.upto(10, 10); ++n) {
    const auto parts = enumerate_partitions(n);
    c.require(parts.size() == bell[n], [&] {
      return "n=" + std::to_string(n) + ": " + std::to_string(parts.size()) + " partitions, expected " +
             std::to_string(bell[n]);
    });
    c.note(n);
  }
  for (int n = 1; n <= c.upto(5, 5); ++n) {
    const auto parts = enumerate_partitions(n);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        const auto m = meet(a, b), j = join(a, b);
        auto pair = [&] { return format_partition(a) + " and " + format_partition(b); };
        c.require(leq(m, a) && leq(m, b) && leq(a, j) && leq(b, j), [&] { return "bounds fail for " + pair(); });
        c.require(meet(a, j) == a && join(a, m) == a, [&] { return "absorption fails for " + pair(); });
        c.require(leq(a, b) == (meet(a, b) == a), [&] { return "order and meet disagree for " + pair(); });
        c.require(format_partition(parse_partition(format_partition(a), n)) == format_partition(a),
                  [&] { return "text round trip fails for " + format_partition(a); });
      }
    }
  }
}

void nests_suite(Context& c) {
  for (Graph g : {Graph::Edgeless, Graph::Complete}) {
    const int cap = g == Graph::Complete ? c.upto(6, kNestCapComplete) : c.upto(7, kNestCapEdgeless - 1);
    for (int n = 1; n <= cap; ++n) {
      for (bool rb : {true, false}) {
        std::set<std::string> seen;
        std::uint64_t count = 0;
        for_each_nest(n, g, rb, [&](const Nest& nest) {
          const auto v = validate_nest(nest);
          c.require(v.ok, [&] { return "invalid nest " + format_nest(nest) + ": " + v.diagnostic; });
          c.require(!rb || nest.has_bottom(), [&] { return "nest without the one-block partition: " + format_nest(nest); });
          if (n <= 5) {
            c.require(seen.insert(format_nest(nest)).second, [&] { return "nest listed twice: " + format_nest(nest); });
            c.require(parse_nest(format_nest(nest), n, g) == nest, [&] { return "text round trip fails: " + format_nest(nest); });
          }
          ++count;
        });
        const Space space = g == Graph::Complete ? (rb ? Space::T : Space::PolyDegComplete)
                                                 : (rb ? Space::W : Space::PolyDegEdgeless);
        const auto expected = evaluate_at_one(stratum_polynomial(space, n));
        c.require(count == expected, [&] {
          return std::string(space_name(space)) + " n=" + std::to_string(n) + ": enumerated " + std::to_string(count) +
                 " nests, counted " + std::to_string(expected);
        });
        c.note(n);
      }
    }
  }
  // Downward closure: dropping any element other than the one-block
  // partition leaves a valid nest.
  for (Graph g : {Graph::Edgeless, Graph::Complete}) {
    for (int n = 1; n <= c.upto(5, 5); ++n) {
      for_each_nest(n, g, true, [&](const Nest& nest) {
        for (std::size_t k = 1; k < nest.chain.size(); ++k) {
          Nest smaller = nest;
          smaller.chain.elements.erase(smaller.chain.elements.begin() + static_cast<std::ptrdiff_t>(k));
          c.require(validate_nest(smaller).ok, [&] { return "not downward closed at " + format_nest(nest); });
        }
        for (std::size_t k = 0; k < nest.sets.size(); ++k) {
          Nest smaller = nest;
          smaller.sets.erase(smaller.sets.begin() + static_cast<std::ptrdiff_t>(k));
          c.require(validate_nest(smaller).ok, [&] { return "not downward closed at " + format_nest(nest); });
        }
      });
    }
  }
}

void trees_suite(Context& c) {
  for (int n = 2; n <= c.upto(7, 8); ++n) {
    for_each_chain(n, {true, false}, [&](const Chain& chain) {
      c.require(!is_star_violation(chain), [&] { return "spider check fails at " + format_chain(chain); });
    });
    c.note(n);
  }
  for (int n = 1; n <= c.upto(6, 6); ++n) {
    for_each_chain(n, {true, true}, [&](const Chain& chain) {
      c.require(canonical_form(stabilize(leveled_tree(chain)), true) ==
                    canonical_form(direct_stabilized_tree(chain), true),
                [&] { return "stabilization disagrees with the direct tree at " + format_chain(chain); });
    });
    for_each_nest(n, Graph::Complete, true, [&](const Nest& nest) {
      for (bool stabilized : {false, true}) {
        const MarkedTree t = grafted_tree(nest, stabilized);
        const std::string defects = tree_defects(t);
        c.require(defects.empty(), [&] { return "malformed tree for " + format_nest(nest) + ": " + defects; });
        if (stabilized) {
          c.require(is_stable(t), [&] { return "unstable tree for " + format_nest(nest); });
          c.require(canonical_form(stabilize(t)) == canonical_form(t),
                    [&] { return "stabilization not idempotent at " + format_nest(nest); });
        }
      }
    });
  }
}

Enumeration sabotaged_enumeration() {
  Enumeration e = standard_enumeration(3, Graph::Edgeless, EnumerationKind::Zl);
  e.order.clear();
  for (const char* s : {"12|3", "13|2", "123", "1|23", "1|2|3"}) e.order.push_back(ArrangementIndex::of(parse_partition(s, 3)));
  e.segments.assign(e.order.size(), "l");
  return e;
}

void li_suite(Context& c) {
  for (Graph g : {Graph::Complete, Graph::Edgeless}) {
    const int cap = g == Graph::Complete ? c.upto(4, 4) : c.upto(5, 5);
    for (int n = 1; n <= cap; ++n) {
      for (EnumerationKind kind : {EnumerationKind::Zl, EnumerationKind::LzlZ, EnumerationKind::ZzL}) {
        const Enumeration e = standard_enumeration(n, g, kind);
        auto label = [&] {
          return std::string(enumeration_kind_name(kind)) + " n=" + std::to_string(n) + " " + std::string(graph_name(g));
        };
        c.require(is_permutation_of_index_set(e), [&] { return label() + " is not a permutation of its index set"; });
        c.require(check_li_condition(e).ok, [&] { return label() + " fails the condition"; });
      }
      c.note(n);
    }
  }
  if (c.n_max >= 3) {
    const Enumeration e = sabotaged_enumeration();
    const LiResult r = check_li_condition(e);
    c.require(!r.ok && r.witness && r.witness->subset == std::vector<std::size_t>{0, 1},
              [] { return "sabotaged enumeration is not caught with J = {12|3, 13|2}"; });
  }
  for (int n = 3; n <= c.upto(4, 4); ++n) {
    for (Graph g : {Graph::Edgeless, Graph::Complete}) {
      const Enumeration base = standard_enumeration(n, g, EnumerationKind::LzlZ);
      for (const auto& rho : enumerate_partitions(n)) {
        for (std::size_t i = 0; i < rho.block_count(); ++i) {
          for (std::size_t j = i + 1; j < rho.block_count(); ++j) {
            const Enumeration s = shuffled_enumeration(base, extend_into_block({rho, rho.blocks()[i]}),
                                                       extend_into_block({rho, rho.blocks()[j]}));
            c.require(is_permutation_of_index_set(s) && check_li_condition(s).ok, [&] {
              return "shuffle at " + format_partition(rho) + " blocks " + format_block(rho.blocks()[i], n) + ", " +
                     format_block(rho.blocks()[j], n) + " fails";
            });
          }
        }
      }
    }
  }
}

void strata_suite(Context& c) {
  for (Space space : {Space::W, Space::T, Space::PolyDegEdgeless, Space::PolyDegComplete}) {
    for (int n = 1; n <= c.upto(6, 6); ++n) {
      const auto counted = stratum_polynomial(space, n);
      const auto enumerated = enumerated_stratum_polynomial(space, n);
      c.require(counted == enumerated, [&] {
        return std::string(space_name(space)) + " n=" + std::to_string(n) + ": f-polynomial " +
               format_polynomial(enumerated) + " differs from the count " + format_polynomial(counted);
      });
      c.note(n);
    }
  }
  for (Space space : {Space::W, Space::T}) {
    for (int n = 2; n <= c.upto(6, 6); ++n) {
      const auto records = divisor_strata(space, n);
      const std::size_t expected = enumerate_partitions(n).size() - 1 +
                                   (space == Space::T ? fm_sets(n).size() : 0);
      c.require(records.size() == expected, [&] {
        return std::string(space_name(space)) + " n=" + std::to_string(n) + ": " + std::to_string(records.size()) +
               " divisor strata, expected " + std::to_string(expected);
      });
      for (const auto& r : records) {
        const MarkedTree t = stable_tree(r);
        // Minus the root: a star, or two vertices joined by an edge. The set
        // [n] itself leaves a lone Zero vertex once its Finite bridge is
        // spliced away.
        const bool two_vertex = t.size() == 3 && t.root().children.size() == 1;
        const bool whole_set = r.nest.sets == std::vector<Mask>{full_mask(n)} && t.size() == 2 &&
                               t[1].tag == ScaleTag::Zero && t[1].legs == full_mask(n);
        c.require(r.dim == n - 2 && (is_star_tree(t) || two_vertex || whole_set),
                  [&] { return "divisor stratum " + format_nest(r.nest) + " has tree " + canonical_form(t); });
      }
      const StratumRecord open = make_record(space, Nest{n, graph_of(space), Chain{n, {SetPartition::bottom(n)}}, {}});
      const MarkedTree t = stable_tree(open);
      c.require(t.size() == 2 && t[1].tag == ScaleTag::Finite && t[1].legs == full_mask(n) && open.dim == n - 1,
                [&] { return "open stratum tree is " + canonical_form(t); });
    }
  }
}

void resolution_suite(Context& c) {
  for (Space space : {Space::W, Space::T}) {
    const int cap = space == Space::W ? c.upto(7, 7) : c.upto(6, 7);
    for (int n = 2; n <= cap; ++n) {
      ResolutionOptions options;
      options.threads = c.threads;
      options.limits.force = true;
      const ResolutionReport r = resolution_report(space, n, options);
      const std::string label = std::string(space_name(space)) + " n=" + std::to_string(n);
      c.require(r.is_birational_model, [&] { return label + ": open stratum does not map isomorphically"; });
      c.require(r.divisor_rows_with_positive_fiber == 0, [&] { return label + ": a divisor stratum has a positive fiber"; });
      c.require(r.unstable_targets == 0, [&] { return label + ": an unstable target tree"; });
      c.require(r.grouping_violations == 0, [&] { return label + ": grouping identity fails"; });
      c.require(space != Space::W || r.star_targets_with_several_preimages == 0,
                [&] { return label + ": a star target has several preimages"; });
      c.require(r.small && r.exceptional_locus_min_codim == r.exceptional_min_codim,
                [&] { return label + ": exceptional locus has codim below 2"; });
      c.require(r.nontrivial == (n >= 4), [&] { return label + ": exceptional set emptiness is wrong"; });
      if (n >= 4) {
        const int expected = n - 1 - ceil_log2(n);
        const auto binary = make_record(space, binary_chain_nest(n, graph_of(space)));
        const auto target = target_stratum(binary.nest);
        const int fiber = (n - 1 - binary.codim) - target.dim;
        c.require(target.dim == 0 && fiber == expected && r.max_fiber >= expected,
                  [&] { return label + ": binary chain fiber " + std::to_string(fiber) + ", expected " + std::to_string(expected); });
      }
      c.note(n);
    }
  }
}

using SuiteFn = void (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> list{
      {"partitions", partitions_suite}, {"nests", nests_suite},   {"trees", trees_suite},
      {"li", li_suite},                 {"strata", strata_suite}, {"resolution", resolution_suite},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.push_back(s.first);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  if (options.suite && std::find(suite_names().begin(), suite_names().end(), *options.suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + *options.suite + "'");
  }
  std::vector<SuiteResult> results;
  for (const auto& [name, fn] : suites()) {
    if (options.suite && *options.suite != name) continue;
    Context context{options.n_max, options.force, options.threads};
    SuiteResult result;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(context);
    } catch (const Failure& f) {
      result.ok = false;
      result.counterexample = f.what;
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.checks = context.checks;
    result.n_max = context.scanned;
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace strata_scope
