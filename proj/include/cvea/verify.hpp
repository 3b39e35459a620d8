#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cvea::verify {

enum class Suite { gaussian, fock, witness, all };

Suite suite_from_string(const std::string& s);
const char* to_string(Suite s);

struct Config {
  /// Overrides the per-criterion Fock cutoffs (40 for the moment check, 30
  /// for the witness sweep and the entanglement-breaking check).
  std::optional<int> cutoff;
  double gamma = 1e-3;
  double r = 10.0;
  /// Bisection tolerance used when locating boundaries. Pass/fail
  /// tolerances are fixed per criterion and independent of this.
  double bisection_tol = 1e-6;
  std::uint64_t seed = 20140521;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Worst observed deviation (or count, for counting criteria).
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

/// Criterion ids run by each suite.
std::vector<int> criteria_for(Suite s);

CriterionResult run_criterion(int id, const Config& config);

std::vector<CriterionResult> run_suite(Suite s, const Config& config);

}  // namespace cvea::verify
