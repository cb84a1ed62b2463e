#include <stdexcept>

#include "doctest.h"
#include "strata_scope/tree.hpp"

using namespace strata_scope;

namespace {

Chain chain_of(std::initializer_list<const char*> items, int n) {
  Chain c{n, {}};
  for (const char* s : items) c.elements.push_back(parse_partition(s, n));
  return c;
}

Mask M(std::string_view text, int n = 8) { return parse_block(text, n); }

// Builds a tree from (parent, block, legs, tag) rows, parents first.
struct Row {
  int parent;
  const char* block;
  const char* legs;
  ScaleTag tag;
};

MarkedTree build(int n, std::initializer_list<Row> rows) {
  MarkedTree t{n, {}};
  t.add_vertex(-1, full_mask(n));
  for (const Row& r : rows) {
    const int id = t.add_vertex(r.parent, parse_block(r.block, n), -1, r.tag);
    if (*r.legs) t.vertices[static_cast<std::size_t>(id)].legs = parse_block(r.legs, n);
  }
  return t;
}

MarkedTree untagged(MarkedTree t) {
  for (auto& v : t.vertices) v.tag = ScaleTag::None;
  return t;
}

constexpr auto N = ScaleTag::None;
constexpr auto I = ScaleTag::Infinite;
constexpr auto F = ScaleTag::Finite;
constexpr auto Z = ScaleTag::Zero;

}  // namespace

TEST_CASE("leveled tree of the three-level chain") {
  const auto h = chain_of({"123|45678", "12|3|45|67|8", "12|3|45|6|7|8"}, 8);
  const auto t = leveled_tree(h);
  CHECK(tree_defects(t).empty());
  // Left tree: one vertex per block per level, legs on the last level.
  const auto expected = build(8, {
      {0, "123", "", N},   {0, "45678", "", N},                                  // level 1: ids 1, 2
      {1, "12", "", N},    {1, "3", "", N},    {2, "45", "", N},                 // level 2: ids 3, 4, 5
      {2, "67", "", N},    {2, "8", "", N},                                      // ids 6, 7
      {3, "12", "12", N},  {4, "3", "3", N},   {5, "45", "45", N},               // level 3
      {6, "6", "6", N},    {6, "7", "7", N},   {7, "8", "8", N},
  });
  CHECK(canonical_form(t, true) == canonical_form(expected, true));
  CHECK(t.size() == 14);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const int want = v == 0 ? 0 : (v <= 2 ? 1 : (v <= 7 ? 2 : 3));
    CHECK(t.vertices[v].level == want);
  }

  // Right tree: the bridges above 3, 6, 7, 8 and above 12, 45 are spliced.
  const auto right = build(8, {
      {0, "123", "", N},   {0, "45678", "", N},
      {1, "12", "12", N},  {1, "3", "3", N},
      {2, "45", "45", N},  {2, "67", "", N},   {2, "8", "8", N},
      {6, "6", "6", N},    {6, "7", "7", N},
  });
  CHECK(canonical_form(stabilize(t), true) == canonical_form(right, true));
  CHECK(canonical_form(direct_stabilized_tree(h), true) == canonical_form(right, true));
}

TEST_CASE("leveled tree extremes") {
  auto bottom = leveled_tree(chain_of({"1234"}, 4));
  REQUIRE(bottom.size() == 2);
  CHECK(bottom.vertices[1].legs == full_mask(4));
  auto top = leveled_tree(chain_of({"1|2|3|4"}, 4));
  CHECK(top.root().children.size() == 4);
  for (int c : top.root().children) CHECK(mask_size(top.vertices[static_cast<std::size_t>(c)].legs) == 1);
  CHECK_THROWS_AS(leveled_tree(Chain{4, {}}), std::invalid_argument);
  CHECK(root_only_tree(4).root().legs == full_mask(4));
}

TEST_CASE("stabilize") {
  SUBCASE("fixpoint") {
    auto t = leveled_tree(chain_of({"1234", "12|3|4"}, 4));
    CHECK(canonical_form(stabilize(t), true) == canonical_form(t, true));
  }
  SUBCASE("finite bridge above an FM bubble") {
    auto nest = parse_nest("12; {1,2}", 2);
    auto t = grafted_tree(nest, false);
    CHECK(t.size() == 3);
    CHECK(t.vertices[1].tag == F);
    auto s = grafted_tree(nest, true);
    REQUIRE(s.size() == 2);
    CHECK(s.vertices[1].tag == Z);
    CHECK(s.vertices[1].legs == 0b11);
  }
  SUBCASE("idempotent and equal to the direct construction, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
      for_each_chain(n, {false, false}, [&](const Chain& c) {
        const auto full = leveled_tree(c);
        const auto once = stabilize(full);
        CHECK(canonical_form(stabilize(once), true) == canonical_form(once, true));
        CHECK(canonical_form(once, true) == canonical_form(direct_stabilized_tree(c), true));
        CHECK(tree_defects(once).empty());
        // Survivors: the root, legged vertices, vertices with >= 2 children.
        std::size_t keepers = 0;
        for (std::size_t v = 0; v < full.size(); ++v) {
          const auto& x = full.vertices[v];
          if (v == 0 || x.legs != 0 || x.children.size() >= 2) ++keepers;
        }
        CHECK(keepers == once.size());
      });
    }
  }
}

TEST_CASE("FM trees") {
  const std::vector<Mask> family{M("678"), M("67")};
  auto r = fm_tree(M("5678"), family, 8);
  MarkedTree want{8, {}};
  want.add_vertex(-1, M("5678"));
  want.vertices[0].legs = M("5");
  want.add_vertex(0, M("678"));
  want.vertices[1].legs = M("8");
  want.add_vertex(1, M("67"));
  want.vertices[2].legs = M("67");
  CHECK(canonical_form(r, true) == canonical_form(want, true));

  auto empty = fm_tree(M("24"), {}, 8);
  CHECK(empty.size() == 1);
  CHECK(empty.root().legs == M("24"));

  const std::vector<Mask> same{M("13")};
  auto r13 = fm_tree(M("13"), same, 8);
  REQUIRE(r13.size() == 2);
  CHECK(r13.root().legs == 0);
  CHECK(r13.vertices[1].legs == M("13"));

  const std::vector<Mask> bad{M("12"), M("23")};
  CHECK_THROWS_AS(fm_tree(M("123"), bad, 8), std::invalid_argument);
  const std::vector<Mask> outside{M("45")};
  CHECK_THROWS_AS(fm_tree(M("123"), outside, 8), std::invalid_argument);
}

TEST_CASE("grafted tree of the combined construction") {
  const auto nest = parse_nest("1234|5678; 13|24|5678; {1,3}; {6,7,8}; {6,7}", 8);
  const auto t = grafted_tree(nest, false);
  CHECK(tree_defects(t).empty());
  const auto expected = build(8, {
      {0, "1234", "", I},  {0, "5678", "", I},                           // ids 1, 2
      {1, "13", "", F},    {1, "24", "24", F},  {2, "5678", "5", F},    // ids 3, 4, 5
      {3, "13", "13", Z},                                               // R({1,3})
      {5, "678", "8", Z},  {7, "67", "67", Z},                          // R({6,7,8},{6,7})
  });
  CHECK(canonical_form(t, true) == canonical_form(expected, true));
  // Strips: levels 1 infinite, 2 finite, everything grafted below is zero.
  for (const auto& v : t.vertices) {
    if (v.level == 1) CHECK(v.tag == I);
    if (v.level == 2) CHECK(v.tag == F);
    if (v.level >= 3) CHECK(v.tag == Z);
  }

  const auto plain = parse_nest("1234; 12|34", 4);
  CHECK(canonical_form(untagged(grafted_tree(plain, false)), true) ==
        canonical_form(leveled_tree(plain.chain), true));

  const auto binary = grafted_tree(parse_nest("1234; 12|34; 1|2|3|4", 4), true);
  const auto binary_expected = build(4, {
      {0, "1234", "", I}, {1, "12", "", I}, {1, "34", "", I},
      {2, "1", "1", F},   {2, "2", "2", F}, {3, "3", "3", F},  {3, "4", "4", F},
  });
  CHECK(canonical_form(binary, true) == canonical_form(binary_expected, true));
  CHECK_THROWS_AS(grafted_tree(parse_nest("12|34; {1,2,3}", 4), false), std::invalid_argument);
}

TEST_CASE("tree invariants over every nest, n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    for_each_nest(n, Graph::Complete, true, [&](const Nest& nest) {
      const auto t = grafted_tree(nest, false);
      const auto s = grafted_tree(nest, true);
      CHECK(tree_defects(t).empty());
      CHECK(tree_defects(s).empty());
      CHECK(canonical_form(stabilize(t)) == canonical_form(s));
      for (std::size_t v = 1; v < t.size(); ++v) {
        if (t.vertices[v].children.empty()) CHECK(finite_on_path(t, static_cast<int>(v)) == 1);
        if (t.vertices[v].legs != 0) CHECK(t.vertices[v].tag != I);
      }
      for (std::size_t v = 1; v < s.size(); ++v) {
        CHECK(finite_on_path(s, static_cast<int>(v)) <= 1);
        if (s.vertices[v].legs != 0) CHECK((s.vertices[v].tag == F || s.vertices[v].tag == Z));
      }
      CHECK(is_stable(s));
      if (nest.sets.empty()) {
        CHECK(canonical_form(untagged(t), true) == canonical_form(leveled_tree(nest.chain), true));
      }
    });
  }
}

TEST_CASE("trim") {
  const auto h = chain_of({"123|45678", "12|3|45|67|8", "12|3|45|6|7|8"}, 8);
  const auto t = leveled_tree(h);
  std::vector<int> all(t.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  CHECK(canonical_form(trim(t, all), true) == canonical_form(t, true));

  const std::vector<int> root{0};
  auto bare = trim(t, root);
  REQUIRE(bare.size() == 1);
  CHECK(bare.root().legs == full_mask(8));

  const std::vector<int> first_level{0, 1, 2};
  auto cut = trim(t, first_level);
  const auto expected = build(8, {{0, "123", "123", N}, {0, "45678", "45678", N}});
  CHECK(canonical_form(cut, true) == canonical_form(expected, true));

  const std::vector<int> not_closed{0, 3};
  CHECK_THROWS_AS(trim(t, not_closed), std::invalid_argument);
  const std::vector<int> rootless{1};
  CHECK_THROWS_AS(trim(t, rootless), std::invalid_argument);
}

TEST_CASE("spider scan") {
  CHECK_FALSE(is_star_violation(chain_of({"1234", "12|3|4"}, 4)));
  CHECK_FALSE(is_star_violation(chain_of({"1234", "12|34", "1|2|3|4"}, 4)));
  CHECK_THROWS_AS(is_star_violation(chain_of({"1234"}, 4)), std::invalid_argument);
  CHECK_THROWS_AS(is_star_violation(chain_of({"12|34", "1|2|3|4"}, 4)), std::invalid_argument);
  std::size_t violations = 0;
  for (int n = 2; n <= 6; ++n) {
    for_each_chain(n, {true, false}, [&](const Chain& c) { violations += is_star_violation(c); });
  }
  CHECK(violations == 0);
}

TEST_CASE("canonical forms") {
  const auto a = grafted_tree(parse_nest("1234; 12|3|4", 4), true);
  const auto b = grafted_tree(parse_nest("1234; {1,2}", 4), true);
  CHECK_FALSE(trees_isomorphic(a, b));

  // Children order and vertex numbering do not matter.
  MarkedTree x{3, {}};
  x.add_vertex(-1, full_mask(3));
  x.add_vertex(0, 0b011, -1, F);
  x.add_vertex(0, 0b100, -1, F);
  x.vertices[1].legs = 0b011;
  x.vertices[2].legs = 0b100;
  MarkedTree y{3, {}};
  y.add_vertex(-1, full_mask(3));
  y.add_vertex(0, 0b100, -1, F);
  y.add_vertex(0, 0b011, -1, F);
  y.vertices[1].legs = 0b100;
  y.vertices[2].legs = 0b011;
  CHECK(trees_isomorphic(x, y));

  // Swapping legs 1 and 2 preserves the form only when they share a vertex.
  MarkedTree swapped = x;
  CHECK(trees_isomorphic(x, swapped));
  MarkedTree apart = x;
  apart.vertices[1].legs = 0b110;
  apart.vertices[2].legs = 0b001;
  MarkedTree apart_swapped = x;
  apart_swapped.vertices[1].legs = 0b101;
  apart_swapped.vertices[2].legs = 0b010;
  CHECK_FALSE(trees_isomorphic(apart, apart_swapped));
}
