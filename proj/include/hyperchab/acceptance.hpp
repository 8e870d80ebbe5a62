#pragma once

#include <string>
#include <vector>

namespace hyperchab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Number of individual cases checked and a note on the first failure, if any.
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1-based); exceptions are reported as failures.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

/// "PASS [3] title (1.23 s): detail".
std::string format_result(const CriterionResult& r);

}  // namespace hyperchab
