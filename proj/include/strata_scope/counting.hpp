#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strata_scope/partition.hpp"
#include "strata_scope/strata.hpp"

namespace strata_scope {

// Coefficient i counts objects of codimension (or size) i.
using CountPolynomial = std::vector<std::uint64_t>;

std::uint64_t evaluate_at_one(const CountPolynomial& p);
std::string format_polynomial(const CountPolynomial& p);

// Nested families on an m-set by number of members, counted without
// enumerating them.
CountPolynomial nested_family_polynomial(int m);

// Strata of the space by codimension, from a dynamic program over the
// partition lattice (no nest enumeration).
CountPolynomial stratum_polynomial(Space space, int n, EnumerationLimits limits = {});

// Same polynomial tallied from the stratum stream.
CountPolynomial enumerated_stratum_polynomial(Space space, int n, EnumerationLimits limits = {});

struct CountReport {
  int n = 0;
  std::uint64_t partitions = 0;
  std::uint64_t chains = 0;              // nonempty chains
  std::uint64_t chains_with_bottom = 0;  // equals the number of W strata
  CountPolynomial w, t, polydeg_edgeless, polydeg_complete;
};

CountReport count_report(int n, EnumerationLimits limits = {});

}  // namespace strata_scope
