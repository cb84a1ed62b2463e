#include "strata_scope/arrangement.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace strata_scope {

std::string format_subvariety(const SymbolicSubvariety& v) {
  return std::string(v.t == TFactor::Zero ? "{0}" : "A1") + " x D(" + format_partition(v.shape) + ")";
}

namespace {

void check_ambient(const SymbolicSubvariety& a, const SymbolicSubvariety& b) {
  if (a.ambient != b.ambient || a.shape.ground_size() != b.shape.ground_size()) {
    throw std::invalid_argument("ambient mismatch: " + std::to_string(a.ambient) + " vs " +
                                std::to_string(b.ambient));
  }
}

}  // namespace

SymbolicSubvariety intersect(const SymbolicSubvariety& a, const SymbolicSubvariety& b) {
  check_ambient(a, b);
  const TFactor t = (a.t == TFactor::Zero || b.t == TFactor::Zero) ? TFactor::Zero : TFactor::Full;
  return {a.ambient, t, meet(a.shape, b.shape)};
}

bool contains(const SymbolicSubvariety& a, const SymbolicSubvariety& b) {
  check_ambient(a, b);
  if (a.t == TFactor::Zero && b.t == TFactor::Full) return false;
  // The polydiagonal of a coarser partition is the smaller subvariety.
  return leq(b.shape, a.shape);
}

int codim(const SymbolicSubvariety& v, int d) {
  return d * (v.ambient - static_cast<int>(v.shape.block_count())) + (v.t == TFactor::Zero ? 1 : 0);
}

bool is_transverse(std::span<const SymbolicSubvariety> collection, int d) {
  if (collection.empty()) throw std::invalid_argument("is_transverse needs a nonempty collection");
  SymbolicSubvariety all = collection.front();
  int sum = 0;
  for (const auto& v : collection) {
    all = intersect(all, v);
    sum += codim(v, d);
  }
  return codim(all, d) == sum;
}

std::string format_index(const ArrangementIndex& index) {
  return index.kind == ArrangementIndex::Kind::Partition ? format_partition(index.partition)
                                                         : format_fm_set(index.set);
}

SymbolicSubvariety subvariety_of(const ArrangementIndex& index, int ambient) {
  if (index.kind == ArrangementIndex::Kind::Partition) {
    if (index.partition.ground_size() != ambient) throw std::invalid_argument("partition does not live on the ambient");
    return {ambient, TFactor::Zero, index.partition};
  }
  std::vector<Mask> blocks{index.set};
  for (int i = 1; i <= ambient; ++i) {
    if ((index.set & element_bit(i)) == 0) blocks.push_back(element_bit(i));
  }
  return {ambient, TFactor::Full, SetPartition::from_blocks(ambient, std::move(blocks))};
}

BuildingSet building_set(int n, Graph graph, BuildingVariant variant) {
  if (n < 1 || n + 1 > kMaxGroundSize) throw std::invalid_argument("building set size out of range");
  BuildingSet out{n, graph, variant, variant == BuildingVariant::Base ? n : n + 1, {}};
  for (auto& p : enumerate_partitions(out.ambient)) out.items.push_back(ArrangementIndex::of(std::move(p)));
  if (graph == Graph::Complete) {
    const auto sets = variant == BuildingVariant::Pointed ? fm_sets_pointed(n) : fm_sets(n);
    for (Mask s : sets) out.items.push_back(ArrangementIndex::of_set(s));
  }
  return out;
}

EnumerationKind parse_enumeration_kind(std::string_view text) {
  if (text == "zl") return EnumerationKind::Zl;
  if (text == "lzlz") return EnumerationKind::LzlZ;
  if (text == "zzL") return EnumerationKind::ZzL;
  throw std::invalid_argument("unknown enumeration '" + std::string(text) + "' (expected zl, lzlz or zzL)");
}

std::string_view enumeration_kind_name(EnumerationKind kind) {
  switch (kind) {
    case EnumerationKind::Zl: return "zl";
    case EnumerationKind::LzlZ: return "lzlz";
    case EnumerationKind::ZzL: return "zzL";
  }
  return "?";
}

void fm_order(std::vector<Mask>& sets) {
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    if (mask_size(a) != mask_size(b)) return mask_size(a) > mask_size(b);
    return mask_elements(a) < mask_elements(b);
  });
}

namespace {

void append(Enumeration& e, ArrangementIndex index, const char* segment) {
  e.order.push_back(std::move(index));
  e.segments.emplace_back(segment);
}

void append_sets(Enumeration& e, std::vector<Mask> sets, const char* segment) {
  fm_order(sets);
  for (Mask s : sets) append(e, ArrangementIndex::of_set(s), segment);
}

}  // namespace

Enumeration standard_enumeration(int n, Graph graph, EnumerationKind kind) {
  if (n < 1 || n + 1 > kMaxGroundSize) throw std::invalid_argument("enumeration size out of range");
  Enumeration e;
  e.n = n;
  e.graph = graph;
  const bool complete = graph == Graph::Complete;
  const auto base = enumerate_partitions(n);

  if (kind == EnumerationKind::Zl) {
    e.variant = BuildingVariant::Base;
    e.ambient = n;
    if (complete) append_sets(e, fm_sets(n), "z");
    for (const auto& p : base) append(e, ArrangementIndex::of(p), "l");
    return e;
  }

  e.variant = BuildingVariant::Pointed;
  e.ambient = n + 1;
  const Mask last = element_bit(n + 1);
  std::vector<Mask> pointed_sets;
  if (complete) {
    for (Mask s : fm_sets(n + 1)) {
      if ((s & last) != 0 && mask_size(s) >= 3) pointed_sets.push_back(s);
    }
  }
  if (kind == EnumerationKind::LzlZ) {
    for (const auto& p : base) append(e, ArrangementIndex::of(adjoin_singleton(p)), "l");
    if (complete) append_sets(e, fm_sets(n), "z");
    for (const auto& p : base) {
      for (Mask b : p.blocks()) append(e, ArrangementIndex::of(extend_into_block({p, b})), "l*");
    }
    append_sets(e, pointed_sets, "z*");
  } else {
    if (complete) append_sets(e, fm_sets(n), "z");
    append_sets(e, pointed_sets, "z*");
    for (auto& p : enumerate_partitions(n + 1)) append(e, ArrangementIndex::of(std::move(p)), "L");
  }
  return e;
}

Enumeration shuffled_enumeration(const Enumeration& base, const SetPartition& first,
                                 const SetPartition& second) {
  if (base.variant != BuildingVariant::Pointed || base.bar ||
      std::find(base.segments.begin(), base.segments.end(), "l*") == base.segments.end()) {
    throw std::invalid_argument("shuffling needs an unshuffled lzl*z* enumeration");
  }
  if (first == second) throw std::invalid_argument("shuffling needs two distinct entries");
  if (leq(first, second) || leq(second, first)) throw std::invalid_argument("shuffled entries are comparable");
  auto position = [&](const SetPartition& p) {
    for (std::size_t i = 0; i < base.order.size(); ++i) {
      if (base.segments[i] == "l*" && base.order[i].kind == ArrangementIndex::Kind::Partition &&
          base.order[i].partition == p) {
        return i;
      }
    }
    throw std::invalid_argument(format_partition(p) + " is not an l* entry of the enumeration");
  };
  position(first);
  position(second);
  const auto a = std::get<BlockPointer>(classify_extension(first));
  const auto b = std::get<BlockPointer>(classify_extension(second));
  if (!(a.partition == b.partition)) throw std::invalid_argument("shuffled entries lie over different partitions");
  const SetPartition& pivot = a.partition;
  const SetPartition merged = meet(first, second);
  const std::size_t merged_at = position(merged);

  std::size_t bar = base.order.size();
  for (std::size_t i = 0; i < base.order.size(); ++i) {
    if (base.segments[i] != "l*") continue;
    if (std::get<BlockPointer>(classify_extension(base.order[i].partition)).partition == pivot) {
      bar = i;
      break;
    }
  }
  if (merged_at > bar) throw std::invalid_argument("the meet of the shuffled entries is not before the bar");

  Enumeration out = base;
  out.order.clear();
  out.segments.clear();
  auto copy_if = [&](auto predicate) {
    for (std::size_t i = 0; i < base.order.size(); ++i) {
      if (predicate(i)) {
        out.order.push_back(base.order[i]);
        out.segments.push_back(base.segments[i]);
      }
    }
  };
  copy_if([&](std::size_t i) { return i == merged_at; });
  copy_if([&](std::size_t i) { return base.segments[i] == "l*" && i < bar && i != merged_at; });
  copy_if([&](std::size_t i) { return base.segments[i] == "l"; });
  copy_if([&](std::size_t i) { return base.segments[i] == "z"; });
  out.bar = out.order.size();
  copy_if([&](std::size_t i) { return base.segments[i] == "l*" && i >= bar; });
  copy_if([&](std::size_t i) { return base.segments[i] == "z*"; });
  return out;
}

bool is_permutation_of_index_set(const Enumeration& e) {
  const auto set = building_set(e.n, e.graph, e.variant);
  if (set.items.size() != e.order.size()) return false;
  for (const auto& item : set.items) {
    if (std::count(e.order.begin(), e.order.end(), item) != 1) return false;
  }
  return true;
}

namespace {

using ClassKey = std::pair<TFactor, std::vector<Mask>>;

ClassKey key_of(const SymbolicSubvariety& v) {
  return {v.t, std::vector<Mask>(v.shape.blocks().begin(), v.shape.blocks().end())};
}

// Minimal elements among members[0..length) containing f, as positions.
std::vector<std::size_t> minimal_containing(const std::vector<SymbolicSubvariety>& members,
                                            std::size_t length, const SymbolicSubvariety& f) {
  std::vector<std::size_t> over;
  for (std::size_t i = 0; i < length; ++i) {
    if (contains(members[i], f)) over.push_back(i);
  }
  std::vector<std::size_t> minimal;
  for (std::size_t i : over) {
    bool is_min = true;
    for (std::size_t j : over) {
      if (j != i && contains(members[i], members[j])) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(i);
  }
  return minimal;
}

bool minimal_transverse(const std::vector<SymbolicSubvariety>& members,
                        const std::vector<std::size_t>& minimal, int d) {
  std::vector<SymbolicSubvariety> chosen;
  chosen.reserve(minimal.size());
  for (std::size_t i : minimal) chosen.push_back(members[i]);
  return is_transverse(chosen, d);
}

}  // namespace

LiResult check_li_condition(const Enumeration& e, int d) {
  std::vector<SymbolicSubvariety> members;
  members.reserve(e.order.size());
  for (const auto& index : e.order) members.push_back(subvariety_of(index, e.ambient));

  struct Class {
    SymbolicSubvariety f;
    std::vector<std::size_t> subset;
  };
  std::vector<Class> classes;
  std::map<ClassKey, std::size_t> class_index;
  std::map<ClassKey, std::size_t> member_index;
  LiResult result;

  auto offer = [&](const SymbolicSubvariety& f, std::vector<std::size_t> subset) {
    auto key = key_of(f);
    auto it = class_index.find(key);
    if (it == class_index.end()) {
      class_index.emplace(std::move(key), classes.size());
      classes.push_back({f, std::move(subset)});
    } else if (subset < classes[it->second].subset) {
      classes[it->second].subset = std::move(subset);
    }
  };

  for (std::size_t p = 0; p < members.size(); ++p) {
    const std::size_t existing = classes.size();
    for (std::size_t c = 0; c < existing; ++c) {
      auto subset = classes[c].subset;
      subset.push_back(p);
      offer(intersect(classes[c].f, members[p]), std::move(subset));
    }
    offer(members[p], {p});
    member_index.emplace(key_of(members[p]), p);

    std::optional<LiWitness> failure;
    for (const auto& cls : classes) {
      // A class that is itself a member is its own unique minimal container.
      if (member_index.count(key_of(cls.f)) != 0) continue;
      ++result.classes_checked;
      auto minimal = minimal_containing(members, p + 1, cls.f);
      if (minimal_transverse(members, minimal, d)) continue;
      if (!failure || cls.subset < failure->subset) failure = LiWitness{p + 1, cls.subset, std::move(minimal)};
    }
    if (failure) {
      result.ok = false;
      result.witness = std::move(failure);
      return result;
    }
  }
  return result;
}

LiResult check_li_condition_exhaustive(const Enumeration& e, int d) {
  if (e.order.size() > 20) throw std::invalid_argument("exhaustive Li check is limited to 20 entries");
  std::vector<SymbolicSubvariety> members;
  for (const auto& index : e.order) members.push_back(subvariety_of(index, e.ambient));
  LiResult result;
  for (std::size_t p = 0; p < members.size(); ++p) {
    const std::size_t length = p + 1;
    std::optional<LiWitness> failure;
    for (std::uint32_t m = 1; m < (1u << length); ++m) {
      std::vector<std::size_t> subset;
      SymbolicSubvariety f;
      for (std::size_t i = 0; i < length; ++i) {
        if ((m & (1u << i)) == 0) continue;
        f = subset.empty() ? members[i] : intersect(f, members[i]);
        subset.push_back(i);
      }
      ++result.classes_checked;
      auto minimal = minimal_containing(members, length, f);
      if (minimal_transverse(members, minimal, d)) continue;
      if (!failure || subset < failure->subset) failure = LiWitness{length, subset, std::move(minimal)};
    }
    if (failure) {
      result.ok = false;
      result.witness = std::move(failure);
      return result;
    }
  }
  return result;
}

IncidenceReport projective_incidence(int n) {
  if (n < 3) throw std::invalid_argument("projective incidence needs n >= 3");
  IncidenceReport report;
  report.n = n;
  for (auto& p : enumerate_partitions(n)) {
    if (p.is_bottom()) continue;
    const int dim = static_cast<int>(p.block_count()) - 2;
    report.elements.push_back({std::move(p), dim});
  }
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    for (std::size_t j = 0; j < report.elements.size(); ++j) {
      if (i != j && leq(report.elements[i].partition, report.elements[j].partition)) {
        report.incidences.emplace_back(i, j);
      }
    }
  }
  for (std::size_t i = 0; i < report.elements.size(); ++i) {
    if (report.elements[i].dimension == 1) ++report.lines;
    if (report.elements[i].dimension != 0) continue;
    ++report.points;
    int through = 0;
    for (const auto& [a, b] : report.incidences) {
      if (a == i && report.elements[b].dimension == 1) ++through;
    }
    report.point_multiplicities.emplace_back(i, through);
  }
  return report;
}

}  // namespace strata_scope
