#include "strata_scope/counting.hpp"

#include <algorithm>

namespace strata_scope {

namespace {

void add_into(CountPolynomial& acc, const CountPolynomial& p, int shift = 0, std::uint64_t scale = 1) {
  if (acc.size() < p.size() + static_cast<std::size_t>(shift)) acc.resize(p.size() + shift, 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i + shift] += scale * p[i];
}

CountPolynomial multiply(const CountPolynomial& a, const CountPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  CountPolynomial out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

void trim_zeros(CountPolynomial& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Families on [m] not containing [m] itself, for m = 0..max.
std::vector<CountPolynomial> proper_family_polynomials(int max) {
  // partial[m]: set partitions of [m], singleton blocks weight 1, a block of
  // size j >= 2 weight x * proper[j] (the block is a member, plus its inside).
  std::vector<CountPolynomial> proper(max + 1), partial(max + 1), weight(max + 1);
  proper[0] = partial[0] = {1};
  for (int m = 1; m <= max; ++m) {
    CountPolynomial without_full;  // the block holding 1 is not all of [m]
    for (int j = 1; j < m; ++j) add_into(without_full, multiply(weight[j], partial[m - j]), 0, binomial(m - 1, j - 1));
    proper[m] = m == 1 ? CountPolynomial{1} : without_full;
    weight[m] = {1};
    if (m >= 2) {
      weight[m].clear();
      add_into(weight[m], proper[m], 1);
    }
    partial[m] = without_full;
    add_into(partial[m], weight[m]);
    trim_zeros(proper[m]);
  }
  return proper;
}

}  // namespace

std::uint64_t evaluate_at_one(const CountPolynomial& p) {
  std::uint64_t s = 0;
  for (auto c : p) s += c;
  return s;
}

std::string format_polynomial(const CountPolynomial& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(p[i]);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CountPolynomial nested_family_polynomial(int m) {
  if (m < 0) return {};
  auto proper = proper_family_polynomials(m);
  CountPolynomial full = proper[m];
  if (m >= 2) add_into(full, proper[m], 1);  // with or without [m] itself
  return full;
}

CountPolynomial stratum_polynomial(Space space, int n, EnumerationLimits limits) {
  const PartitionLattice lattice(n, limits);
  const bool complete = graph_of(space) == Graph::Complete;
  std::vector<CountPolynomial> families;
  if (complete) {
    for (int m = 0; m <= n; ++m) families.push_back(nested_family_polynomial(m));
  }
  // from[i]: chains starting at element i, x per element after the first,
  // times the FM families on the blocks of the chain's last element.
  std::vector<CountPolynomial> from(lattice.size());
  for (std::size_t i = lattice.size(); i-- > 0;) {
    CountPolynomial own{1};
    if (complete) {
      for (Mask b : lattice.at(i).blocks()) own = multiply(own, families[mask_size(b)]);
    }
    CountPolynomial above;
    for (auto j : lattice.above(i)) add_into(above, from[j]);
    add_into(own, above, 1);
    from[i] = std::move(own);
  }
  CountPolynomial result;
  if (requires_bottom(space)) {
    result = from[0];
  } else {
    result = complete ? families[n] : CountPolynomial{1};
    CountPolynomial all;
    for (const auto& f : from) add_into(all, f);
    add_into(result, all, 1);
  }
  trim_zeros(result);
  return result;
}

CountPolynomial enumerated_stratum_polynomial(Space space, int n, EnumerationLimits limits) {
  CountPolynomial p;
  for_each_stratum(space, n, [&](const StratumRecord& r) {
    if (p.size() <= static_cast<std::size_t>(r.codim)) p.resize(r.codim + 1, 0);
    ++p[r.codim];
  }, limits);
  return p;
}

CountReport count_report(int n, EnumerationLimits limits) {
  CountReport r;
  r.n = n;
  const PartitionLattice lattice(n, limits);
  r.partitions = lattice.size();
  r.w = stratum_polynomial(Space::W, n, limits);
  r.t = stratum_polynomial(Space::T, n, limits);
  r.polydeg_edgeless = stratum_polynomial(Space::PolyDegEdgeless, n, limits);
  r.polydeg_complete = stratum_polynomial(Space::PolyDegComplete, n, limits);
  r.chains_with_bottom = evaluate_at_one(r.w);
  r.chains = evaluate_at_one(r.polydeg_edgeless) - 1;
  return r;
}

}  // namespace strata_scope
