#include <algorithm>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "strata_scope/arrangement.hpp"

using namespace strata_scope;

namespace {

SymbolicSubvariety V(TFactor t, const char* shape, int m) { return {m, t, parse_partition(shape, m)}; }

std::vector<SymbolicSubvariety> all_subvarieties(int m) {
  std::vector<SymbolicSubvariety> out;
  for (const auto& p : enumerate_partitions(m)) {
    out.push_back({m, TFactor::Zero, p});
    out.push_back({m, TFactor::Full, p});
  }
  return out;
}

Enumeration with_order(const Enumeration& e, std::vector<ArrangementIndex> order) {
  Enumeration out = e;
  out.order = std::move(order);
  out.segments.assign(out.order.size(), "?");
  return out;
}

SymbolicSubvariety intersection_of(const Enumeration& e, const std::vector<std::size_t>& subset) {
  SymbolicSubvariety f = subvariety_of(e.order[subset.front()], e.ambient);
  for (std::size_t i : subset) f = intersect(f, subvariety_of(e.order[i], e.ambient));
  return f;
}

}  // namespace

TEST_CASE("symbolic calculus examples") {
  const auto z = TFactor::Zero;
  const auto f = TFactor::Full;
  CHECK(intersect(V(z, "12|34|56", 6), V(z, "123|456", 6)) == V(z, "123456", 6));
  CHECK(contains(V(f, "12|3|4", 4), V(z, "12|34", 4)));
  CHECK_FALSE(contains(V(z, "12|34", 4), V(f, "12|3|4", 4)));
  auto x = V(f, "13|2", 3);
  CHECK(intersect(x, x) == x);
  CHECK(codim(V(z, "1234", 4)) == 4);
  CHECK(codim(V(f, "12|3|4", 4)) == 1);
  for (int d = 1; d <= 3; ++d) CHECK(codim(V(z, "1|2|3", 3), d) == 1);
  CHECK_THROWS_AS(intersect(V(z, "12", 2), V(z, "123", 3)), std::invalid_argument);

  const std::vector<SymbolicSubvariety> pair_diagonals{V(f, "12|3", 3), V(f, "13|2", 3)};
  CHECK(is_transverse(pair_diagonals));
  const std::vector<SymbolicSubvariety> pinned{V(z, "12|3", 3), V(z, "13|2", 3)};
  CHECK_FALSE(is_transverse(pinned));
  const std::vector<SymbolicSubvariety> single{V(z, "123", 3)};
  CHECK(is_transverse(single));
}

TEST_CASE("intersection laws and containment order, m <= 4") {
  for (int m = 1; m <= 4; ++m) {
    const auto all = all_subvarieties(m);
    for (const auto& a : all) {
      CHECK(contains(a, a));
      for (const auto& b : all) {
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(contains(a, b) == (intersect(a, b) == b));
        if (contains(a, b) && contains(b, a)) CHECK(a == b);
        for (const auto& c : all) {
          CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
          if (contains(a, b) && contains(b, c)) CHECK(contains(a, c));
        }
      }
    }
  }
}

TEST_CASE("transversality does not depend on d") {
  for (int m = 1; m <= 4; ++m) {
    const auto all = all_subvarieties(m);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        for (std::size_t k = j; k < all.size(); ++k) {
          const std::vector<SymbolicSubvariety> c{all[i], all[j], all[k]};
          const bool one = is_transverse(c, 1);
          CHECK(is_transverse(c, 2) == one);
          CHECK(is_transverse(c, 3) == one);
        }
      }
    }
  }
  const auto all = all_subvarieties(3);
  for (std::uint32_t mask = 1; mask < (1u << all.size()); ++mask) {
    std::vector<SymbolicSubvariety> c;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (mask & (1u << i)) c.push_back(all[i]);
    }
    const bool one = is_transverse(c, 1);
    CHECK(is_transverse(c, 2) == one);
    CHECK(is_transverse(c, 3) == one);
  }
}

TEST_CASE("standard enumerations") {
  auto e = standard_enumeration(3, Graph::Edgeless, EnumerationKind::Zl);
  REQUIRE(e.order.size() == 5);
  CHECK(format_index(e.order[0]) == "123");
  CHECK(e.order[4].partition.is_top());
  CHECK(std::count(e.segments.begin(), e.segments.end(), "z") == 0);

  e = standard_enumeration(2, Graph::Complete, EnumerationKind::Zl);
  REQUIRE(e.order.size() == 3);
  CHECK(format_index(e.order[0]) == "{1,2}");
  CHECK(format_index(e.order[1]) == "12");
  CHECK(format_index(e.order[2]) == "1|2");

  e = standard_enumeration(3, Graph::Complete, EnumerationKind::LzlZ);
  CHECK(std::count(e.segments.begin(), e.segments.end(), "l") == 5);
  CHECK(std::count(e.segments.begin(), e.segments.end(), "z") == 4);
  CHECK(std::count(e.segments.begin(), e.segments.end(), "l*") == 10);
  CHECK(std::count(e.segments.begin(), e.segments.end(), "z*") == 4);
  // l* follows the fibers over l: the first fiber is over the one-block partition.
  CHECK(format_index(e.order[9]) == "1234");
  CHECK(format_index(e.order[10]) == "124|3");
  CHECK(format_index(e.order[11]) == "12|34");
  CHECK(format_index(e.order[12]) == "134|2");

  for (int n = 1; n <= 4; ++n) {
    for (Graph g : {Graph::Edgeless, Graph::Complete}) {
      for (auto kind : {EnumerationKind::Zl, EnumerationKind::LzlZ, EnumerationKind::ZzL}) {
        CHECK(is_permutation_of_index_set(standard_enumeration(n, g, kind)));
      }
    }
  }
  CHECK_THROWS_AS(parse_enumeration_kind("lz"), std::invalid_argument);
}

TEST_CASE("Li condition on the standard enumerations") {
  for (int n = 1; n <= 4; ++n) {
    for (auto kind : {EnumerationKind::Zl, EnumerationKind::LzlZ, EnumerationKind::ZzL}) {
      CHECK(check_li_condition(standard_enumeration(n, Graph::Complete, kind)).ok);
    }
  }
  for (int n = 1; n <= 5; ++n) {
    for (auto kind : {EnumerationKind::Zl, EnumerationKind::LzlZ, EnumerationKind::ZzL}) {
      CHECK(check_li_condition(standard_enumeration(n, Graph::Edgeless, kind)).ok);
    }
  }
}

TEST_CASE("sabotaged enumeration fails with the pinned pair") {
  const auto base = standard_enumeration(3, Graph::Edgeless, EnumerationKind::Zl);
  std::vector<ArrangementIndex> order;
  for (const char* s : {"12|3", "13|2", "123", "1|23", "1|2|3"}) order.push_back(ArrangementIndex::of(parse_partition(s, 3)));
  const auto e = with_order(base, order);
  CHECK(is_permutation_of_index_set(e));
  const auto r = check_li_condition(e);
  REQUIRE_FALSE(r.ok);
  CHECK(r.witness->segment_length == 2);
  CHECK(r.witness->subset == std::vector<std::size_t>{0, 1});
  CHECK(r.witness->minimal == std::vector<std::size_t>{0, 1});
  CHECK(check_li_condition_exhaustive(e).witness->subset == std::vector<std::size_t>{0, 1});
}

TEST_CASE("pruned checker agrees with the exhaustive one, m <= 3") {
  std::mt19937 rng(7);
  const std::vector<Enumeration> bases{
      standard_enumeration(2, Graph::Complete, EnumerationKind::Zl),
      standard_enumeration(3, Graph::Complete, EnumerationKind::Zl),
      standard_enumeration(3, Graph::Edgeless, EnumerationKind::Zl),
      standard_enumeration(2, Graph::Complete, EnumerationKind::LzlZ),
      standard_enumeration(2, Graph::Edgeless, EnumerationKind::ZzL),
  };
  std::size_t failures = 0;
  for (const auto& base : bases) {
    for (int trial = 0; trial < 300; ++trial) {
      auto order = base.order;
      std::shuffle(order.begin(), order.end(), rng);
      const auto e = with_order(base, order);
      const auto fast = check_li_condition(e);
      const auto slow = check_li_condition_exhaustive(e);
      REQUIRE(fast.ok == slow.ok);
      if (!fast.ok) {
        ++failures;
        CHECK(fast.witness->segment_length == slow.witness->segment_length);
        // The pruned witness is a genuine failure.
        const auto f = intersection_of(e, fast.witness->subset);
        std::vector<SymbolicSubvariety> minimal;
        for (std::size_t i : fast.witness->minimal) minimal.push_back(subvariety_of(e.order[i], e.ambient));
        CHECK_FALSE(is_transverse(minimal));
        for (const auto& m : minimal) CHECK(contains(m, f));
        // The exhaustive witness is least among all failing subsets.
        CHECK(slow.witness->subset <= fast.witness->subset);
      }
    }
  }
  CHECK(failures > 0);
}

TEST_CASE("checker verdict is insensitive to the FM tie-break, n <= 3") {
  std::mt19937 rng(11);
  for (int n = 2; n <= 3; ++n) {
    for (auto kind : {EnumerationKind::Zl, EnumerationKind::LzlZ, EnumerationKind::ZzL}) {
      const auto base = standard_enumeration(n, Graph::Complete, kind);
      for (int trial = 0; trial < 50; ++trial) {
        auto e = base;
        // Reorder each z / z* segment randomly among equal-size sets, which
        // keeps supersets ahead of their subsets.
        for (const char* seg : {"z", "z*"}) {
          std::vector<std::size_t> pos;
          for (std::size_t i = 0; i < e.order.size(); ++i) {
            if (e.segments[i] == seg) pos.push_back(i);
          }
          std::vector<std::pair<std::pair<int, unsigned>, Mask>> keyed;
          for (std::size_t i : pos) keyed.push_back({{-mask_size(e.order[i].set), static_cast<unsigned>(rng())}, e.order[i].set});
          std::sort(keyed.begin(), keyed.end());
          for (std::size_t k = 0; k < pos.size(); ++k) e.order[pos[k]] = ArrangementIndex::of_set(keyed[k].second);
        }
        CHECK(check_li_condition(e).ok);
      }
    }
  }
}

TEST_CASE("shuffled enumeration") {
  const auto base = standard_enumeration(4, Graph::Complete, EnumerationKind::LzlZ);
  const auto pivot = parse_partition("12|34", 4);
  const auto first = extend_into_block({pivot, parse_block("12", 4)});
  const auto second = extend_into_block({pivot, parse_block("34", 4)});
  const auto e = shuffled_enumeration(base, first, second);
  CHECK(is_permutation_of_index_set(e));
  CHECK(format_index(e.order.front()) == "12345");
  CHECK(check_li_condition(e).ok);
  // Everything from the bar on is the base enumeration's tail.
  REQUIRE(e.bar.has_value());
  const std::size_t tail = e.order.size() - *e.bar;
  CHECK(std::equal(e.order.begin() + static_cast<std::ptrdiff_t>(*e.bar), e.order.end(),
                   base.order.end() - static_cast<std::ptrdiff_t>(tail)));
  CHECK(format_index(e.order[*e.bar]) == "125|34");

  CHECK_THROWS_AS(shuffled_enumeration(base, first, first), std::invalid_argument);
  const auto other = extend_into_block({parse_partition("1|234", 4), parse_block("1", 4)});
  CHECK_THROWS_AS(shuffled_enumeration(base, first, other), std::invalid_argument);

  // Every pair of blocks of every pivot, n = 3 and 4.
  for (int n = 3; n <= 4; ++n) {
    for (Graph g : {Graph::Edgeless, Graph::Complete}) {
      const auto b = standard_enumeration(n, g, EnumerationKind::LzlZ);
      for (const auto& rho : enumerate_partitions(n)) {
        for (std::size_t i = 0; i < rho.block_count(); ++i) {
          for (std::size_t j = i + 1; j < rho.block_count(); ++j) {
            const auto s = shuffled_enumeration(b, extend_into_block({rho, rho.blocks()[i]}),
                                                extend_into_block({rho, rho.blocks()[j]}));
            CHECK(check_li_condition(s).ok);
          }
        }
      }
    }
  }
}

TEST_CASE("projective incidence") {
  const auto r4 = projective_incidence(4);
  CHECK(r4.lines == 6);
  CHECK(r4.points == 7);
  int triple = 0;
  int dbl = 0;
  for (auto [point, through] : r4.point_multiplicities) {
    const auto& p = r4.elements[point].partition;
    const bool three_one = p.blocks()[0] != 0 && (mask_size(p.blocks()[0]) == 3 || mask_size(p.blocks()[1]) == 3);
    CHECK(through == (three_one ? 3 : 2));
    triple += through == 3;
    dbl += through == 2;
  }
  CHECK(triple == 4);
  CHECK(dbl == 3);

  const auto r3 = projective_incidence(3);
  CHECK(r3.lines == 1);
  CHECK(r3.points == 3);
  for (auto [point, through] : r3.point_multiplicities) CHECK(through == 1);
  CHECK_THROWS_AS(projective_incidence(2), std::invalid_argument);
}
