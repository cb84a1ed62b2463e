#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "strata_scope/counting.hpp"
#include "strata_scope/resolution.hpp"
#include "strata_scope/strata.hpp"

using namespace strata_scope;

namespace {

Nest nest_of(std::string_view text, int n, Graph g) { return parse_nest(text, n, g); }

StratumRecord record_of(Space space, std::string_view text, int n) {
  return make_record(space, nest_of(text, n, graph_of(space)));
}

std::vector<int> codims(const std::vector<StratumRecord>& records) {
  std::vector<int> out;
  for (const auto& r : records) out.push_back(r.codim);
  return out;
}

std::vector<std::string> texts(const std::vector<StratumRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(format_nest(r.nest));
  return out;
}

}  // namespace

TEST_CASE("space names") {
  for (Space s : {Space::W, Space::T, Space::PolyDegEdgeless, Space::PolyDegComplete}) {
    CHECK(parse_space(space_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_space("w"), std::invalid_argument);
  CHECK(graph_of(Space::W) == Graph::Edgeless);
  CHECK(graph_of(Space::PolyDegComplete) == Graph::Complete);
  CHECK(space_dimension(Space::T, 5) == 4);
  CHECK(space_dimension(Space::PolyDegEdgeless, 5) == 6);
}

TEST_CASE("strata of W_3 and T_2") {
  const auto w3 = strata(Space::W, 3);
  CHECK(codims(w3) == std::vector<int>{0, 1, 1, 1, 1, 2, 2, 2});
  CHECK(texts(w3).front() == "123");
  for (const auto& r : w3) CHECK(r.dim == 2 - r.codim);

  const auto t2 = strata(Space::T, 2);
  CHECK(texts(t2) == std::vector<std::string>{"12", "12; 1|2", "12; {1,2}"});
  CHECK(codims(t2) == std::vector<int>{0, 1, 1});

  const auto w1 = strata(Space::W, 1);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].dim == 0);
  CHECK(w1[0].codim == 0);
}

TEST_CASE("records are sorted by codim, then nest text") {
  for (Space s : {Space::W, Space::T, Space::PolyDegEdgeless, Space::PolyDegComplete}) {
    const auto records = strata(s, 4);
    for (std::size_t i = 1; i < records.size(); ++i) {
      const auto a = std::make_pair(records[i - 1].codim, format_nest(records[i - 1].nest));
      const auto b = std::make_pair(records[i].codim, format_nest(records[i].nest));
      CHECK(a < b);
    }
  }
}

TEST_CASE("open stratum") {
  for (int n = 1; n <= 7; ++n) {
    for (Space s : {Space::W, Space::T}) {
      const auto r = make_record(s, Nest{n, graph_of(s), Chain{n, {SetPartition::bottom(n)}}, {}});
      CHECK(r.codim == 0);
      CHECK(r.dim == n - 1);
      const auto t = stable_tree(r);
      REQUIRE(t.size() == 2);
      CHECK(t[1].tag == ScaleTag::Finite);
      CHECK(t[1].legs == full_mask(n));
    }
  }
}

TEST_CASE("degeneration records") {
  // The empty nest is the generic stratum of the degeneration.
  const auto r = make_record(Space::PolyDegComplete, Nest{3, Graph::Complete, Chain{3, {}}, {}});
  CHECK(r.codim == 0);
  CHECK(r.dim == 4);
  CHECK(dual_tree(r).size() == 1);
  const auto y = record_of(Space::PolyDegComplete, "{1,2}", 3);
  CHECK(y.codim == 1);
  CHECK(y.dim == 3);
  const auto full = record_of(Space::PolyDegEdgeless, "123; 1|2|3", 3);
  CHECK(full.codim == 2);
  CHECK(full.dim == 2);
  CHECK_THROWS_AS(make_record(Space::W, nest_of("12|3", 3, Graph::Edgeless)), std::invalid_argument);
  CHECK_THROWS_AS(make_record(Space::T, nest_of("123", 3, Graph::Edgeless)), std::invalid_argument);
}

TEST_CASE("record trees are the grafted trees") {
  for (const auto& r : strata(Space::T, 4)) {
    CHECK(canonical_form(dual_tree(r)) == canonical_form(grafted_tree(r.nest, false)));
    CHECK(canonical_form(stable_tree(r)) == canonical_form(grafted_tree(r.nest, true)));
  }
}

TEST_CASE("divisor strata") {
  const auto bell = oracle::bell_triangle(7);
  CHECK(divisor_strata(Space::W, 4).size() == 14);
  CHECK(divisor_strata(Space::T, 4).size() == 25);
  for (int n = 2; n <= 6; ++n) {
    const std::size_t fm = (std::size_t{1} << n) - 1 - static_cast<std::size_t>(n);
    const auto w = divisor_strata(Space::W, n);
    const auto t = divisor_strata(Space::T, n);
    CHECK(w.size() == bell[static_cast<std::size_t>(n)] - 1);
    CHECK(t.size() == bell[static_cast<std::size_t>(n)] - 1 + fm);
    for (const auto& r : t) {
      CHECK(r.dim == n - 2);
      // A star, a two-vertex tree, or (for the set [n]) a lone Zero vertex.
      const auto tree = stable_tree(r);
      const bool two_vertex = tree.size() == 3 && tree.root().children.size() == 1;
      const bool whole = tree.size() == 2 && tree[1].tag == ScaleTag::Zero && r.nest.sets.size() == 1 &&
                         r.nest.sets[0] == full_mask(n);
      CHECK((is_star_tree(tree) || two_vertex || whole));
    }
  }
}

TEST_CASE("closure order") {
  const auto open = record_of(Space::W, "1234", 4);
  const auto a = record_of(Space::W, "1234; 12|34", 4);
  const auto b = record_of(Space::W, "1234; 12|34; 1|2|3|4", 4);
  const auto c = record_of(Space::W, "1234; 13|24", 4);
  CHECK(closure_leq(a, b));
  CHECK_FALSE(closure_leq(b, a));
  CHECK_FALSE(closure_leq(a, c));
  CHECK_FALSE(closure_leq(c, a));
  for (const auto& r : strata(Space::W, 4)) CHECK(closure_leq(open, r));
  CHECK_THROWS_AS(closure_leq(a, record_of(Space::W, "123", 3)), std::invalid_argument);
  CHECK_THROWS_AS(closure_leq(a, record_of(Space::T, "1234; 12|34", 4)), std::invalid_argument);
}

TEST_CASE("downward closure, n <= 5") {
  for (Space space : {Space::W, Space::T}) {
    for (int n = 1; n <= 5; ++n) {
      const auto records = strata(space, n);
      std::set<std::string> present;
      for (const auto& r : records) present.insert(format_nest(r.nest));
      for (const auto& r : records) {
        // Every subset of the non-bottom elements, with the bottom kept.
        const std::size_t chain_extra = r.nest.chain.size() - 1;
        const std::size_t items = chain_extra + r.nest.sets.size();
        for (unsigned m = 0; m < (1u << items); ++m) {
          Nest sub{n, r.nest.graph, Chain{n, {r.nest.chain.elements.front()}}, {}};
          for (std::size_t i = 0; i < items; ++i) {
            if ((m & (1u << i)) == 0) continue;
            if (i < chain_extra) {
              sub.chain.elements.push_back(r.nest.chain.elements[i + 1]);
            } else {
              sub.sets.push_back(r.nest.sets[i - chain_extra]);
            }
          }
          sort_fm_sets(sub.sets);
          CHECK(present.count(format_nest(sub)) == 1);
          CHECK(closure_leq(make_record(space, sub), r));
        }
      }
    }
  }
}

TEST_CASE("closure covers") {
  const auto records = strata(Space::W, 3);
  const auto covers = closure_covers(records);
  // Open to 4 divisors, each of the 3 flags has two facets.
  CHECK(covers.size() == 4 + 3 * 2);
  for (auto [i, j] : covers) {
    CHECK(closure_leq(records[i], records[j]));
    CHECK(records[j].codim == records[i].codim + 1);
  }
}

TEST_CASE("f-polynomials against the oracle, n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto w = oracle::stratum_counts(n, false, true);
    const auto t = oracle::stratum_counts(n, true, true);
    const auto pe = oracle::stratum_counts(n, false, false);
    CHECK(stratum_polynomial(Space::W, n) == w);
    CHECK(enumerated_stratum_polynomial(Space::W, n) == w);
    CHECK(stratum_polynomial(Space::T, n) == t);
    CHECK(enumerated_stratum_polynomial(Space::T, n) == t);
    CHECK(stratum_polynomial(Space::PolyDegEdgeless, n) == pe);
    CHECK(enumerated_stratum_polynomial(Space::PolyDegEdgeless, n) == pe);
    const auto pc = oracle::stratum_counts(n, true, false);
    CHECK(stratum_polynomial(Space::PolyDegComplete, n) == pc);
    CHECK(enumerated_stratum_polynomial(Space::PolyDegComplete, n) == pc);
  }
}

TEST_CASE("stratum totals, n <= 7") {
  // Frozen from the oracle above (n <= 6) and the lattice count (n = 7).
  const std::uint64_t w[] = {1, 2, 8, 64, 872, 18024, 525520};
  const std::uint64_t t[] = {1, 3, 18, 176, 2528, 50948, 1405120};
  for (int n = 1; n <= 7; ++n) {
    CHECK(evaluate_at_one(stratum_polynomial(Space::W, n)) == w[n - 1]);
    CHECK(evaluate_at_one(stratum_polynomial(Space::T, n)) == t[n - 1]);
  }
}
