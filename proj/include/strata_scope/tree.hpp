#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "strata_scope/nest.hpp"
#include "strata_scope/partition.hpp"

namespace strata_scope {

// Where the translation field lives on a component: identically infinite,
// finite and nonzero, or zero (a Fulton-MacPherson bubble). The root carries
// no tag.
enum class ScaleTag : std::uint8_t { None, Infinite, Finite, Zero };

std::string_view tag_name(ScaleTag tag);

struct TreeVertex {
  int parent = -1;  // -1 only for the root
  int level = -1;   // -1 when the tree carries no levels
  ScaleTag tag = ScaleTag::None;
  Mask legs = 0;
  Mask block = 0;  // display label
  std::vector<int> children;
};

// Rooted tree with legs 1..n. Vertex 0 is the root; parents always precede
// their children in `vertices`.
struct MarkedTree {
  int ground_size = 0;
  std::vector<TreeVertex> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  const TreeVertex& root() const { return vertices.front(); }
  const TreeVertex& operator[](std::size_t i) const { return vertices[i]; }
  int add_vertex(int parent, Mask block, int level = -1, ScaleTag tag = ScaleTag::None);
  // Vertex carrying leg i.
  int leg_vertex(int element) const;
};

// Level-i vertices are the blocks of the i-th chain element; the legs sit on
// the last level. Throws on an empty chain.
MarkedTree leveled_tree(const Chain& chain);
// Root-only tree with all n legs on the root.
MarkedTree root_only_tree(int n);
// The stabilized leveled tree built straight from the chain: a block is kept
// unless it reappears as a block one level down.
MarkedTree direct_stabilized_tree(const Chain& chain);

// Splices out every non-root vertex with one child and no legs, keeping tags,
// legs and block labels of the survivors and dropping levels. Idempotent.
MarkedTree stabilize(const MarkedTree& t);

// The Fulton-MacPherson tree of a nested family inside `set`: one root for
// `set` and one vertex per member (a member equal to `set` is its own child),
// each member hanging below its least strict superset, each element of `set`
// a leg of the smallest vertex containing it.
MarkedTree fm_tree(Mask set, std::span<const Mask> family, int n);

// Leveled tree of the chain with the FM trees of each finest block grafted in,
// tagged Infinite above the finest level, Finite on it and Zero below. A nest
// with empty chain gives the FM tree of [n] rooted at the root.
MarkedTree grafted_tree(const Nest& nest, bool stabilized);

// Keeps the ancestor-closed vertex set `members` (must contain the root); the
// legs of each removed subtree move to the surviving vertex it hung from.
MarkedTree trim(const MarkedTree& t, std::span<const int> members);

// True when the stabilized leveled tree of the chain minus its root is a
// star and yet the chain is not the two-element case left unchanged by
// stabilization. Requires the one-block partition in the chain and at least
// two elements.
bool is_star_violation(const Chain& chain);

// String invariant under vertex re-indexing and child reordering; it records
// shape, legs and tags (and block labels when asked).
std::string canonical_form(const MarkedTree& t, bool with_blocks = false);
bool trees_isomorphic(const MarkedTree& a, const MarkedTree& b);

// Empty when the tree is well formed: parents precede children, every leg
// appears once, levels step by one, tags run Infinite, Finite, Zero along
// paths, legs avoid Infinite vertices and Finite vertices are incomparable.
std::string tree_defects(const MarkedTree& t);
// Number of Finite vertices on the path from the root to vertex v.
int finite_on_path(const MarkedTree& t, int v);
// Every non-root v has children + legs + 1 >= 2 when Finite, >= 3 otherwise.
bool is_stable(const MarkedTree& t);

}  // namespace strata_scope
