#include "strata_scope/resolution.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "strata_scope/errors.hpp"
#include "strata_scope/parallel.hpp"

namespace strata_scope {

TargetStratum target_stratum(const Nest& nest) {
  if (!nest.has_bottom()) throw std::invalid_argument("target strata need the one-block partition in the nest");
  TargetStratum s;
  s.tree = grafted_tree(nest, true);
  s.form = canonical_form(s.tree);
  s.dim = target_dim(s.tree);
  return s;
}

int target_dim(const MarkedTree& t) {
  int dim = 0;
  for (std::size_t v = 1; v < t.size(); ++v) {
    const TreeVertex& x = t[v];
    if (x.tag == ScaleTag::None) throw std::invalid_argument("target_dim needs a tagged tree");
    const int s = static_cast<int>(x.children.size()) + mask_size(x.legs) + 1;
    const int c = x.tag == ScaleTag::Finite ? s - 2 : s - 3;
    if (c < 0) throw std::invalid_argument("target_dim needs a stable tree");
    dim += c;
  }
  return dim;
}

bool is_star_tree(const MarkedTree& t) {
  if (t.size() < 2 || t.root().children.size() != 1 || t.root().legs != 0) return false;
  const TreeVertex& center = t[t.root().children.front()];
  if (center.children.size() < 2) return false;
  return std::all_of(center.children.begin(), center.children.end(),
                     [&](int c) { return t[c].children.empty(); });
}

namespace {

struct RowData {
  std::string nest;
  std::string form;
  int codim = 0;
  int dim = 0;
  bool star = false;
  bool stable = true;
};

struct GroupAccumulator {
  TargetGroup group;
  std::vector<std::size_t> row_indices;
};

bool before(int codim_a, const std::string& a, int codim_b, const std::string& b) {
  return codim_a != codim_b ? codim_a < codim_b : a < b;
}

constexpr std::size_t kBatchPerThread = 4096;

}  // namespace

ResolutionReport resolution_report(Space space, int n, const ResolutionOptions& options) {
  if (!requires_bottom(space)) throw std::invalid_argument("resolution reports cover wn and tn only");
  if (n < 2) throw std::invalid_argument("resolution reports need n >= 2");

  ResolutionReport report;
  report.space = space;
  report.n = n;
  const unsigned threads = resolve_thread_count(options.threads);
  const int top_dim = n - 1;

  std::unordered_map<std::string, std::size_t> group_index;
  std::vector<TargetGroup> groups;
  std::vector<std::vector<std::string>> group_preimages;
  std::vector<std::size_t> row_group;  // parallel to report.rows before remapping
  std::vector<std::size_t> exceptional_group;

  auto consume = [&](std::vector<Nest>& batch) {
    std::vector<RowData> data(batch.size());
    parallel_for(batch.size(), threads, [&](std::size_t i) {
      const StratumRecord record = make_record(space, batch[i]);
      RowData& d = data[i];
      d.codim = record.codim;
      d.nest = format_nest(batch[i]);
      const MarkedTree tree = grafted_tree(batch[i], true);
      d.form = canonical_form(tree);
      d.stable = is_stable(tree);
      d.dim = d.stable ? target_dim(tree) : 0;
      d.star = is_star_tree(tree);
    });
    for (RowData& d : data) {
      const int fiber = (top_dim - d.codim) - (d.dim + options.target_dim_shift);
      if (fiber < 0) {
        throw ModelInconsistency("negative fiber dimension " + std::to_string(fiber) + " at nest " + d.nest);
      }
      auto [it, inserted] = group_index.try_emplace(d.form, groups.size());
      if (inserted) {
        TargetGroup g;
        g.form = d.form;
        g.dim = d.dim;
        g.star = d.star;
        g.stable = d.stable;
        g.min_codim = d.codim;
        g.first_preimage = d.nest;
        groups.push_back(std::move(g));
        group_preimages.emplace_back();
      }
      TargetGroup& g = groups[it->second];
      if (g.dim != d.dim) ++report.grouping_violations;
      ++g.preimage_count;
      g.max_fiber = std::max(g.max_fiber, fiber);
      if (before(d.codim, d.nest, g.min_codim, g.first_preimage)) g.first_preimage = d.nest;
      g.min_codim = std::min(g.min_codim, d.codim);
      if (options.keep_preimages) group_preimages[it->second].push_back(d.nest);

      ++report.stratum_count;
      ++report.codim_fiber_counts[{d.codim, fiber}];
      if (static_cast<int>(report.max_target_dim_by_fiber.size()) <= fiber) {
        report.max_target_dim_by_fiber.resize(fiber + 1, -1);
      }
      report.max_target_dim_by_fiber[fiber] = std::max(report.max_target_dim_by_fiber[fiber], d.dim);
      if (d.codim == 1 && fiber > 0) ++report.divisor_rows_with_positive_fiber;

      ResolutionRow row{d.nest, d.codim, 0, d.dim, fiber};
      if (fiber > 0) {
        report.exceptional.push_back(row);
        exceptional_group.push_back(it->second);
      }
      if (options.keep_rows) {
        report.rows.push_back(std::move(row));
        row_group.push_back(it->second);
      }
    }
    batch.clear();
  };

  std::vector<Nest> batch;
  const std::size_t batch_size = kBatchPerThread * threads;
  batch.reserve(batch_size);
  for_each_nest(n, graph_of(space), true, [&](const Nest& nest) {
    batch.push_back(nest);
    if (batch.size() == batch_size) consume(batch);
  }, options.limits);
  consume(batch);

  // Canonical target order, then remap row references.
  std::vector<std::size_t> order(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].dim != groups[b].dim ? groups[a].dim < groups[b].dim : groups[a].form < groups[b].form;
  });
  std::vector<std::uint32_t> rank(groups.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<std::uint32_t>(i);
  report.targets.reserve(groups.size());
  for (std::size_t i : order) {
    TargetGroup g = std::move(groups[i]);
    if (options.keep_preimages) {
      g.preimages = std::move(group_preimages[i]);
      std::sort(g.preimages.begin(), g.preimages.end());
    }
    report.targets.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < report.rows.size(); ++i) report.rows[i].target = rank[row_group[i]];
  for (std::size_t i = 0; i < report.exceptional.size(); ++i) {
    report.exceptional[i].target = rank[exceptional_group[i]];
  }
  auto row_less = [](const ResolutionRow& a, const ResolutionRow& b) { return before(a.codim, a.nest, b.codim, b.nest); };
  std::sort(report.rows.begin(), report.rows.end(), row_less);
  std::sort(report.exceptional.begin(), report.exceptional.end(), row_less);

  for (const TargetGroup& g : report.targets) {
    if (!g.stable) ++report.unstable_targets;
    if (g.star && g.preimage_count != 1) ++report.star_targets_with_several_preimages;
    if (top_dim - g.min_codim != g.dim + g.max_fiber) ++report.grouping_violations;
    if (g.max_fiber > 0) {
      report.exceptional_locus_min_codim =
          std::min(report.exceptional_locus_min_codim.value_or(g.min_codim), g.min_codim);
    }
    report.max_fiber = std::max(report.max_fiber, g.max_fiber);
  }
  for (const ResolutionRow& row : report.exceptional) {
    report.exceptional_min_codim = std::min(report.exceptional_min_codim.value_or(row.codim), row.codim);
  }
  report.nontrivial = !report.exceptional.empty();
  report.small = !report.exceptional_min_codim || *report.exceptional_min_codim >= 2;

  // The open stratum is the only one of codim 0.
  const Nest open{n, graph_of(space), Chain{n, {SetPartition::bottom(n)}}, {}};
  const std::string open_form = canonical_form(grafted_tree(open, true));
  const auto open_target = std::find_if(report.targets.begin(), report.targets.end(),
                                        [&](const TargetGroup& g) { return g.form == open_form; });
  report.is_birational_model = open_target != report.targets.end() && open_target->preimage_count == 1 &&
                               open_target->max_fiber == 0;
  report.ih = ih_smallness(report);
  return report;
}

IhVerdict ih_smallness(const ResolutionReport& report) {
  IhVerdict verdict;
  const auto& by_fiber = report.max_target_dim_by_fiber;
  int best = -1;  // largest target dim among rows with fiber >= r
  std::vector<IhLevel> levels;
  for (int r = static_cast<int>(by_fiber.size()) - 1; r >= 1; --r) {
    best = std::max(best, by_fiber[r]);
    if (best < 0) continue;
    const int codim = (report.n - 1) - best;
    levels.push_back({r, codim, codim > 2 * r});
  }
  std::reverse(levels.begin(), levels.end());
  // The witness is the deepest failing level.
  for (const IhLevel& level : levels) {
    if (!level.ok) verdict.witness = level.r;
  }
  verdict.ok = !verdict.witness.has_value();
  verdict.levels = std::move(levels);
  return verdict;
}

int ceil_log2(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

Nest binary_chain_nest(int n, Graph graph) {
  Nest nest{n, graph, Chain{n, {}}, {}};
  for (int j = ceil_log2(n); j >= 0; --j) {
    std::vector<Mask> blocks((static_cast<std::size_t>(n - 1) >> j) + 1, 0);
    for (int a = 1; a <= n; ++a) blocks[static_cast<std::size_t>((a - 1) >> j)] |= element_bit(a);
    nest.chain.elements.push_back(SetPartition::from_blocks(n, blocks));
  }
  return nest;
}

}  // namespace strata_scope
