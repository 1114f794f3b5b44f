#pragma once

// Seeded batch verification of the operator identities over random corpora.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockcalc/json_io.hpp"

namespace fockcalc {

enum class SuiteKind { car, bounds, commutation, clark, covariance, bridge, all };

/// Throws BadTagError for an unknown name.
SuiteKind parse_suite_kind(std::string_view name);
std::string to_string(SuiteKind kind);

struct SuiteConfig {
  SuiteKind suite = SuiteKind::all;
  int trials = 500;
  std::uint64_t seed = 0;
  int support_max = 10;
  int max_terms = 24;
  std::vector<double> p_grid{0.0, 1.0, 2.0};
  double tolerance = 1e-12;
  double bridge_tolerance = 1e-10;
  int horizon = 8;       // bridge suite path horizon
  unsigned threads = 1;  // never affects the report
};

struct CheckResult {
  std::string check;
  std::string identity;  // human-readable statement of what was checked
  double max_gap = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::optional<int> horizon;  // bridge checks only

  bool pass() const { return max_gap <= tolerance; }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckResult> checks;

  bool pass() const;
  Json to_json() const;
};

/// Generates `trials` random functionals from the seed and runs the selected
/// checks. Algebra gaps are normalized by (1 + ||Phi||_{-0}); bridge gaps are
/// absolute. Results are independent of config.threads.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace fockcalc
