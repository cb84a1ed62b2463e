#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace strata_scope {

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::uint64_t checks = 0;
  double seconds = 0.0;
  int n_max = 0;               // largest n actually scanned
  std::string counterexample;  // first failure, empty when ok
};

struct VerifyOptions {
  int n_max = 5;
  std::optional<std::string> suite;  // all suites when empty
  unsigned threads = 0;
  bool force = false;  // lifts the per-suite n caps to the hard caps
};

// partitions, nests, trees, li, strata, resolution
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument on an unknown suite name.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

}  // namespace strata_scope
