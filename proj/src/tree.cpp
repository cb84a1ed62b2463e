#include "strata_scope/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata_scope {

std::string_view tag_name(ScaleTag tag) {
  switch (tag) {
    case ScaleTag::Infinite: return "infinite";
    case ScaleTag::Finite: return "finite";
    case ScaleTag::Zero: return "zero";
    case ScaleTag::None: break;
  }
  return "none";
}

int MarkedTree::add_vertex(int parent, Mask block, int level, ScaleTag tag) {
  const int id = static_cast<int>(vertices.size());
  TreeVertex v;
  v.parent = parent;
  v.level = level;
  v.tag = tag;
  v.block = block;
  vertices.push_back(std::move(v));
  if (parent >= 0) vertices[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

int MarkedTree::leg_vertex(int element) const {
  const Mask bit = element_bit(element);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if ((vertices[i].legs & bit) != 0) return static_cast<int>(i);
  }
  throw std::out_of_range("leg " + std::to_string(element) + " is not attached");
}

MarkedTree root_only_tree(int n) {
  MarkedTree t{n, {}};
  t.add_vertex(-1, full_mask(n), 0);
  t.vertices[0].legs = full_mask(n);
  return t;
}

MarkedTree leveled_tree(const Chain& chain) {
  if (chain.empty()) {
    throw std::invalid_argument("leveled_tree needs a nonempty chain; use root_only_tree");
  }
  const int n = chain.ground_size;
  MarkedTree t{n, {}};
  t.add_vertex(-1, full_mask(n), 0);
  std::vector<std::pair<Mask, int>> previous;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::vector<std::pair<Mask, int>> current;
    for (Mask b : chain.elements[i].blocks()) {
      int parent = 0;
      for (auto [pb, id] : previous) {
        if (is_subset(b, pb)) parent = id;
      }
      current.emplace_back(b, t.add_vertex(parent, b, static_cast<int>(i) + 1));
    }
    previous = std::move(current);
  }
  for (auto [b, id] : previous) t.vertices[static_cast<std::size_t>(id)].legs = b;
  return t;
}

MarkedTree direct_stabilized_tree(const Chain& chain) {
  if (chain.empty()) {
    throw std::invalid_argument("direct_stabilized_tree needs a nonempty chain");
  }
  const int n = chain.ground_size;
  const std::size_t k = chain.size();
  MarkedTree t{n, {}};
  t.add_vertex(-1, full_mask(n), -1);
  // Kept vertices so far, as (block, id); later entries are deeper.
  std::vector<std::pair<Mask, int>> kept;
  for (std::size_t i = 0; i < k; ++i) {
    for (Mask b : chain.elements[i].blocks()) {
      if (i + 1 < k && chain.elements[i + 1].has_block(b)) continue;
      int parent = 0;
      for (auto [pb, id] : kept) {
        if (is_subset(b, pb)) parent = id;
      }
      const int id = t.add_vertex(parent, b);
      if (i + 1 == k) t.vertices[static_cast<std::size_t>(id)].legs = b;
      kept.emplace_back(b, id);
    }
  }
  return t;
}

MarkedTree stabilize(const MarkedTree& t) {
  MarkedTree out{t.ground_size, {}};
  out.vertices.reserve(t.size());
  // nearest[v]: id in `out` of v or of its nearest surviving ancestor.
  std::vector<int> nearest(t.size(), -1);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const TreeVertex& src = t.vertices[v];
    const bool keep = v == 0 || src.children.size() != 1 || src.legs != 0;
    if (!keep) {
      nearest[v] = nearest[static_cast<std::size_t>(src.parent)];
      continue;
    }
    const int parent = v == 0 ? -1 : nearest[static_cast<std::size_t>(src.parent)];
    const int id = out.add_vertex(parent, src.block, -1, src.tag);
    out.vertices[static_cast<std::size_t>(id)].legs = src.legs;
    nearest[v] = id;
  }
  return out;
}

namespace {

// Members sorted so that every strict superset precedes its subsets.
std::vector<Mask> supersets_first(std::span<const Mask> family) {
  std::vector<Mask> order(family.begin(), family.end());
  std::sort(order.begin(), order.end(), [](Mask a, Mask b) {
    if (mask_size(a) != mask_size(b)) return mask_size(a) > mask_size(b);
    return a < b;
  });
  return order;
}

// Hangs the FM tree of `family` inside `set` below vertex `anchor`, moving the
// legs of `set` from the anchor to the smallest member containing them.
void graft_family(MarkedTree& t, int anchor, Mask set, std::span<const Mask> family, ScaleTag tag) {
  const auto order = supersets_first(family);
  std::vector<std::pair<Mask, int>> placed;
  placed.reserve(order.size());
  const int anchor_level = t.vertices[static_cast<std::size_t>(anchor)].level;
  for (Mask m : order) {
    int parent = anchor;
    int parent_size = 0;
    for (auto [pm, id] : placed) {
      if (is_subset(m, pm) && m != pm && (parent == anchor || mask_size(pm) < parent_size)) {
        parent = id;
        parent_size = mask_size(pm);
      }
    }
    int level = -1;
    if (anchor_level >= 0) level = t.vertices[static_cast<std::size_t>(parent)].level + 1;
    placed.emplace_back(m, t.add_vertex(parent, m, level, tag));
  }
  Mask remaining = set;
  for (int e : mask_elements(set)) {
    int target = anchor;
    int target_size = 0;
    for (auto [pm, id] : placed) {
      if ((pm & element_bit(e)) != 0 && (target == anchor || mask_size(pm) < target_size)) {
        target = id;
        target_size = mask_size(pm);
      }
    }
    if (target != anchor) {
      t.vertices[static_cast<std::size_t>(target)].legs |= element_bit(e);
      remaining &= ~element_bit(e);
    }
  }
  t.vertices[static_cast<std::size_t>(anchor)].legs =
      (t.vertices[static_cast<std::size_t>(anchor)].legs & ~set) | remaining;
}

void check_family(Mask set, std::span<const Mask> family) {
  for (Mask m : family) {
    if (!is_subset(m, set)) throw std::invalid_argument("FM member " + format_fm_set(m) + " leaves its set");
    if (mask_size(m) < 2) throw std::invalid_argument("FM member " + format_fm_set(m) + " is too small");
  }
  if (!is_nested(family)) throw std::invalid_argument("FM family is not nested");
}

}  // namespace

MarkedTree fm_tree(Mask set, std::span<const Mask> family, int n) {
  if (!is_subset(set, full_mask(n)) || set == 0) throw std::invalid_argument("fm_tree: bad set");
  check_family(set, family);
  MarkedTree t{n, {}};
  t.add_vertex(-1, set);
  t.vertices[0].legs = set;
  graft_family(t, 0, set, family, ScaleTag::None);
  return t;
}

MarkedTree grafted_tree(const Nest& nest, bool stabilized) {
  if (auto v = validate_nest(nest); !v) throw std::invalid_argument("invalid nest: " + v.diagnostic);
  const int n = nest.ground_size;
  MarkedTree t;
  if (nest.chain.empty()) {
    t = MarkedTree{n, {}};
    t.add_vertex(-1, full_mask(n), 0);
    t.vertices[0].legs = full_mask(n);
    graft_family(t, 0, full_mask(n), nest.sets, ScaleTag::Zero);
  } else {
    t = leveled_tree(nest.chain);
    const int deepest = static_cast<int>(nest.chain.size());
    const std::size_t before_graft = t.size();
    for (std::size_t v = 1; v < before_graft; ++v) {
      t.vertices[v].tag = t.vertices[v].level == deepest ? ScaleTag::Finite : ScaleTag::Infinite;
    }
    if (!nest.sets.empty()) {
      for (std::size_t v = 1; v < before_graft; ++v) {
        if (t.vertices[v].level != deepest) continue;
        const Mask block = t.vertices[v].block;
        std::vector<Mask> local;
        for (Mask s : nest.sets) {
          if (is_subset(s, block)) local.push_back(s);
        }
        if (!local.empty()) graft_family(t, static_cast<int>(v), block, local, ScaleTag::Zero);
      }
    }
  }
  return stabilized ? stabilize(t) : t;
}

MarkedTree trim(const MarkedTree& t, std::span<const int> members) {
  std::vector<char> in(t.size(), 0);
  for (int v : members) {
    if (v < 0 || static_cast<std::size_t>(v) >= t.size()) throw std::invalid_argument("trim: vertex out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  if (!in[0]) throw std::invalid_argument("trim: the root must be kept");
  for (std::size_t v = 1; v < t.size(); ++v) {
    if (in[v] && !in[static_cast<std::size_t>(t.vertices[v].parent)]) {
      throw std::invalid_argument("trim: vertex set is not closed under ancestors");
    }
  }
  MarkedTree out{t.ground_size, {}};
  std::vector<int> nearest(t.size(), -1);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const TreeVertex& src = t.vertices[v];
    if (!in[v]) {
      nearest[v] = nearest[static_cast<std::size_t>(src.parent)];
      out.vertices[static_cast<std::size_t>(nearest[v])].legs |= src.legs;
      continue;
    }
    const int parent = v == 0 ? -1 : nearest[static_cast<std::size_t>(src.parent)];
    const int id = out.add_vertex(parent, src.block, src.level, src.tag);
    out.vertices[static_cast<std::size_t>(id)].legs |= src.legs;
    nearest[v] = id;
  }
  return out;
}

bool is_star_violation(const Chain& chain) {
  if (chain.size() < 2 || !chain.elements.front().is_bottom()) {
    throw std::invalid_argument("is_star_violation needs the one-block partition and at least two elements");
  }
  const MarkedTree full = leveled_tree(chain);
  const MarkedTree stable = stabilize(full);
  const auto& root = stable.root();
  bool star = root.children.size() == 1;
  if (star) {
    const int center = root.children.front();
    for (std::size_t v = 1; v < stable.size(); ++v) {
      if (static_cast<int>(v) != center && stable.vertices[v].parent != center) star = false;
    }
  }
  if (!star) return false;
  return chain.size() != 2 || stable.size() != full.size();
}

namespace {

char tag_letter(ScaleTag tag) {
  switch (tag) {
    case ScaleTag::Infinite: return 'I';
    case ScaleTag::Finite: return 'F';
    case ScaleTag::Zero: return 'Z';
    case ScaleTag::None: break;
  }
  return '-';
}

std::string form_of(const MarkedTree& t, int v, bool with_blocks) {
  const TreeVertex& x = t.vertices[static_cast<std::size_t>(v)];
  std::string out = "(";
  out.push_back(v == 0 ? '*' : tag_letter(x.tag));
  if (with_blocks) out += "<" + format_block(x.block, t.ground_size) + ">";
  if (x.legs != 0) {
    out.push_back('[');
    bool first = true;
    for (int e : mask_elements(x.legs)) {
      if (!first) out.push_back(',');
      out += std::to_string(e);
      first = false;
    }
    out.push_back(']');
  }
  std::vector<std::string> kids;
  kids.reserve(x.children.size());
  for (int c : x.children) kids.push_back(form_of(t, c, with_blocks));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) out += k;
  out.push_back(')');
  return out;
}

int tag_rank(ScaleTag tag) {
  switch (tag) {
    case ScaleTag::Infinite: return 0;
    case ScaleTag::Finite: return 1;
    case ScaleTag::Zero: return 2;
    case ScaleTag::None: break;
  }
  return -1;
}

}  // namespace

std::string canonical_form(const MarkedTree& t, bool with_blocks) {
  if (t.vertices.empty()) return "()";
  return form_of(t, 0, with_blocks);
}

bool trees_isomorphic(const MarkedTree& a, const MarkedTree& b) {
  return a.ground_size == b.ground_size && canonical_form(a) == canonical_form(b);
}

int finite_on_path(const MarkedTree& t, int v) {
  int count = 0;
  while (v > 0) {
    if (t.vertices[static_cast<std::size_t>(v)].tag == ScaleTag::Finite) ++count;
    v = t.vertices[static_cast<std::size_t>(v)].parent;
  }
  return count;
}

std::string tree_defects(const MarkedTree& t) {
  if (t.vertices.empty()) return "tree has no root";
  if (t.vertices[0].parent != -1) return "vertex 0 is not a root";
  Mask seen = 0;
  const bool leveled = t.vertices[0].level >= 0;
  bool tagged = false;
  for (std::size_t v = 1; v < t.size(); ++v) tagged = tagged || t.vertices[v].tag != ScaleTag::None;
  for (std::size_t v = 0; v < t.size(); ++v) {
    const TreeVertex& x = t.vertices[v];
    if ((seen & x.legs) != 0) return "a leg is attached twice";
    seen |= x.legs;
    for (int c : x.children) {
      if (c <= static_cast<int>(v) || static_cast<std::size_t>(c) >= t.size() ||
          t.vertices[static_cast<std::size_t>(c)].parent != static_cast<int>(v)) {
        return "child list disagrees with parent map at vertex " + std::to_string(v);
      }
    }
    if (v == 0) {
      if (leveled && x.level != 0) return "root is not on level 0";
      continue;
    }
    if (x.parent < 0 || x.parent >= static_cast<int>(v)) return "parent does not precede vertex " + std::to_string(v);
    const TreeVertex& p = t.vertices[static_cast<std::size_t>(x.parent)];
    if (leveled && x.level != p.level + 1) return "level does not step by one at vertex " + std::to_string(v);
    if (tagged) {
      if (x.tag == ScaleTag::None) return "untagged vertex " + std::to_string(v);
      if (x.parent != 0 && tag_rank(x.tag) < tag_rank(p.tag)) {
        return "tags out of order at vertex " + std::to_string(v);
      }
      if (x.tag == ScaleTag::Infinite && x.legs != 0) return "legs on an Infinite vertex";
      if (finite_on_path(t, static_cast<int>(v)) > 1) return "comparable Finite vertices";
    }
  }
  std::size_t reachable = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++reachable;
    for (int c : t.vertices[static_cast<std::size_t>(v)].children) stack.push_back(c);
  }
  if (reachable != t.size()) return "some vertices are unreachable from the root";
  if (seen != full_mask(t.ground_size)) return "not every leg is attached";
  return {};
}

bool is_stable(const MarkedTree& t) {
  for (std::size_t v = 1; v < t.size(); ++v) {
    const TreeVertex& x = t.vertices[v];
    const int s = static_cast<int>(x.children.size()) + mask_size(x.legs) + 1;
    if (s < (x.tag == ScaleTag::Finite ? 2 : 3)) return false;
  }
  return true;
}

}  // namespace strata_scope
