#include "strata_scope/nest.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "strata_scope/errors.hpp"

namespace strata_scope {

std::string_view graph_name(Graph g) { return g == Graph::Edgeless ? "edgeless" : "complete"; }

std::vector<Mask> fm_sets(int n) {
  std::vector<Mask> out;
  for (Mask m = 1; m <= full_mask(n); ++m) {
    if (mask_size(m) >= 2) out.push_back(m);
  }
  return out;
}

std::vector<Mask> fm_sets_pointed(int n) {
  std::vector<Mask> out;
  const Mask last = element_bit(n + 1);
  for (Mask m : fm_sets(n + 1)) {
    if ((m & last) != 0 && mask_size(m) == 2) continue;
    out.push_back(m);
  }
  return out;
}

bool is_nested(std::span<const Mask> family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Mask a = family[i];
      const Mask b = family[j];
      if ((a & b) != 0 && !is_subset(a, b) && !is_subset(b, a)) return false;
    }
  }
  return true;
}

void sort_fm_sets(std::vector<Mask>& sets) {
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    const int ma = std::countr_zero(a);
    const int mb = std::countr_zero(b);
    if (ma != mb) return ma < mb;
    if (mask_size(a) != mask_size(b)) return mask_size(a) > mask_size(b);
    return a < b;
  });
}

std::string format_fm_set(Mask set) {
  std::string out = "{";
  bool first = true;
  for (int e : mask_elements(set)) {
    if (!first) out.push_back(',');
    out += std::to_string(e);
    first = false;
  }
  out.push_back('}');
  return out;
}

NestValidation validate_nest(const Nest& candidate) {
  auto fail = [](std::string message) { return NestValidation{false, std::move(message)}; };
  const int n = candidate.ground_size;
  if (n < 1 || n > kMaxGroundSize) return fail("ground size out of range");
  if (candidate.chain.ground_size != n && !candidate.chain.empty()) {
    return fail("ground size mismatch between nest and chain");
  }
  for (const auto& p : candidate.chain.elements) {
    if (p.ground_size() != n) return fail("ground size mismatch: chain element " + format_partition(p));
  }
  if (!is_strict_chain(candidate.chain.elements)) {
    return fail("chain is not strictly increasing (items must go coarsest to finest)");
  }
  if (candidate.graph == Graph::Edgeless && !candidate.sets.empty()) {
    return fail("the edgeless graph admits no FM sets");
  }
  for (Mask s : candidate.sets) {
    if (!is_subset(s, full_mask(n))) return fail("FM set " + format_fm_set(s) + " leaves the ground set");
    if (mask_size(s) < 2) return fail("FM set " + format_fm_set(s) + " has fewer than two elements");
  }
  for (std::size_t i = 0; i < candidate.sets.size(); ++i) {
    for (std::size_t j = i + 1; j < candidate.sets.size(); ++j) {
      if (candidate.sets[i] == candidate.sets[j]) {
        return fail("duplicate FM set " + format_fm_set(candidate.sets[i]));
      }
    }
  }
  std::vector<Mask> family = candidate.sets;
  if (!candidate.chain.empty()) {
    const auto blocks = candidate.chain.max().blocks();
    family.insert(family.end(), blocks.begin(), blocks.end());
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const Mask a = family[i];
      const Mask b = family[j];
      if ((a & b) != 0 && !is_subset(a, b) && !is_subset(b, a)) {
        return fail("not nested: " + format_fm_set(a) + " and " + format_fm_set(b) + " overlap");
      }
    }
  }
  if (!candidate.chain.empty()) {
    for (Mask s : candidate.sets) {
      for (Mask b : candidate.chain.max().blocks()) {
        if (is_subset(b, s) && b != s) {
          return fail("FM set " + format_fm_set(s) + " strictly contains block " +
                      format_block(b, n) + " of the finest partition");
        }
      }
    }
  }
  return {};
}

std::vector<std::vector<Mask>> nested_families(int k) {
  const std::vector<Mask> candidates = fm_sets(k);
  const std::size_t count = candidates.size();
  const std::size_t words = (count + 63) / 64;
  // compatible[i] = bitset of candidates j with {i, j} nested.
  std::vector<std::vector<std::uint64_t>> compatible(count, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const Mask a = candidates[i];
      const Mask b = candidates[j];
      if (i != j && ((a & b) == 0 || is_subset(a, b) || is_subset(b, a))) {
        compatible[i][j / 64] |= std::uint64_t{1} << (j % 64);
      }
    }
  }

  std::vector<std::vector<Mask>> out;
  std::vector<Mask> current;
  std::function<void(std::size_t, const std::vector<std::uint64_t>&)> rec =
      [&](std::size_t start, const std::vector<std::uint64_t>& allowed) {
        auto family = current;
        sort_fm_sets(family);
        out.push_back(std::move(family));
        for (std::size_t w = start / 64; w < words; ++w) {
          std::uint64_t bits = allowed[w];
          if (w == start / 64) bits &= ~std::uint64_t{0} << (start % 64);
          while (bits != 0) {
            const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            std::vector<std::uint64_t> next(words);
            for (std::size_t x = 0; x < words; ++x) next[x] = allowed[x] & compatible[i][x];
            current.push_back(candidates[i]);
            rec(i + 1, next);
            current.pop_back();
          }
        }
      };
  if (count == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::uint64_t> all(words, ~std::uint64_t{0});
  if (count % 64 != 0) all.back() = (std::uint64_t{1} << (count % 64)) - 1;
  rec(0, all);
  return out;
}

namespace {

Mask relabel(Mask local, std::span<const int> elements) {
  Mask out = 0;
  while (local != 0) {
    out |= element_bit(elements[static_cast<std::size_t>(std::countr_zero(local))]);
    local &= local - 1;
  }
  return out;
}

class FamilyCache {
 public:
  explicit FamilyCache(int n) {
    for (int k = 0; k <= n; ++k) local_.push_back(nested_families(k));
  }

  const std::vector<std::vector<Mask>>& on(Mask block) {
    auto it = cache_.find(block);
    if (it != cache_.end()) return it->second;
    const auto elements = mask_elements(block);
    std::vector<std::vector<Mask>> families;
    const auto& local = local_[elements.size()];
    families.reserve(local.size());
    for (const auto& fam : local) {
      std::vector<Mask> mapped;
      mapped.reserve(fam.size());
      for (Mask m : fam) mapped.push_back(relabel(m, elements));
      families.push_back(std::move(mapped));
    }
    return cache_.emplace(block, std::move(families)).first->second;
  }

 private:
  std::vector<std::vector<std::vector<Mask>>> local_;
  std::unordered_map<Mask, std::vector<std::vector<Mask>>> cache_;
};

}  // namespace

void for_each_nest(int n, Graph graph, bool require_bottom,
                   const std::function<void(const Nest&)>& visit, EnumerationLimits limits) {
  const int cap = graph == Graph::Complete ? kNestCapComplete : kNestCapEdgeless;
  if (n < 1) throw std::invalid_argument("ground size must be positive");
  if (n > cap && !limits.force) {
    throw CapExceeded("nest enumeration for n = " + std::to_string(n) + " on the " +
                      std::string(graph_name(graph)) + " graph exceeds the default cap n <= " +
                      std::to_string(cap) + "; pass the force flag to override");
  }
  const EnumerationLimits forced{true};

  if (graph == Graph::Edgeless) {
    Nest nest{n, graph, {n, {}}, {}};
    for_each_chain(n, {require_bottom, true}, [&](const Chain& chain) {
      nest.chain = chain;
      visit(nest);
    }, forced);
    return;
  }

  FamilyCache families(n);
  Nest nest{n, graph, {n, {}}, {}};
  if (!require_bottom) {
    for (const auto& fam : families.on(full_mask(n))) {
      nest.sets = fam;
      visit(nest);
    }
  }
  for_each_chain(n, {require_bottom, require_bottom}, [&](const Chain& chain) {
    nest.chain = chain;
    const auto blocks = chain.max().blocks();
    std::vector<const std::vector<std::vector<Mask>>*> per_block;
    per_block.reserve(blocks.size());
    for (Mask b : blocks) per_block.push_back(&families.on(b));
    std::vector<std::size_t> odometer(blocks.size(), 0);
    while (true) {
      nest.sets.clear();
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& fam = (*per_block[i])[odometer[i]];
        nest.sets.insert(nest.sets.end(), fam.begin(), fam.end());
      }
      sort_fm_sets(nest.sets);
      visit(nest);
      std::size_t i = blocks.size();
      while (i > 0) {
        --i;
        if (++odometer[i] < per_block[i]->size()) break;
        odometer[i] = 0;
        if (i == 0) return;
      }
    }
  }, forced);
}

std::vector<Nest> enumerate_nests(int n, Graph graph, bool require_bottom, EnumerationLimits limits) {
  std::vector<Nest> out;
  for_each_nest(n, graph, require_bottom, [&](const Nest& nest) { out.push_back(nest); }, limits);
  return out;
}

std::vector<Mask> restrict_fm(const Nest& nest, Mask block) {
  const bool valid_block = nest.chain.empty() ? block == full_mask(nest.ground_size)
                                              : nest.chain.max().has_block(block);
  if (!valid_block) {
    throw std::invalid_argument("restrict_fm: " + format_block(block, nest.ground_size) +
                                " is not a block of the finest chain element");
  }
  std::vector<Mask> out;
  for (Mask s : nest.sets) {
    if (is_subset(s, block)) out.push_back(s);
  }
  return out;
}

bool is_subnest(const Nest& a, const Nest& b) {
  if (a.ground_size != b.ground_size) return false;
  for (const auto& p : a.chain.elements) {
    if (!b.chain.contains(p)) return false;
  }
  for (Mask s : a.sets) {
    if (std::find(b.sets.begin(), b.sets.end(), s) == b.sets.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text grammar

Nest parse_nest(std::string_view text, int n, Graph graph) {
  if (n < 1 || n > kMaxGroundSize) throw std::invalid_argument("ground size out of range");
  Nest nest{n, graph, {n, {}}, {}};
  auto blank = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    const auto body = text.substr(b, e - b);
    if (body.empty() || body == "(empty)") return nest;
  }

  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    const std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    std::string_view item = text.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < item.size() && std::isspace(static_cast<unsigned char>(item[lead]))) ++lead;
    if (blank(item)) throw ParseError("empty nest item", start);
    const std::size_t offset = start + lead;
    std::size_t tail = item.size();
    while (tail > 0 && std::isspace(static_cast<unsigned char>(item[tail - 1]))) --tail;
    item = item.substr(lead, tail - lead);

    if (item.front() == '{') {
      if (item.size() < 2 || item.back() != '}') throw ParseError("unterminated FM set", offset);
      const auto inner = item.substr(1, item.size() - 2);
      if (const auto bad = inner.find_first_of("{}|"); bad != std::string_view::npos) {
        throw ParseError("malformed FM set", offset + 1 + bad);
      }
      try {
        nest.sets.push_back(parse_block(inner, n));
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), offset + 1 + e.position());
      }
    } else {
      try {
        nest.chain.elements.push_back(parse_partition(item, n));
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), offset + e.position());
      }
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  sort_fm_sets(nest.sets);
  return nest;
}

std::string format_nest(const Nest& nest) {
  std::string out;
  auto add = [&](const std::string& item) {
    if (!out.empty()) out += "; ";
    out += item;
  };
  for (const auto& p : nest.chain.elements) add(format_partition(p));
  for (Mask s : nest.sets) add(format_fm_set(s));
  return out.empty() ? "(empty)" : out;
}

}  // namespace strata_scope
