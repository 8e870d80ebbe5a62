#include <iostream>

#include "hyperchab/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= hyperchab::kCriterionCount; ++id) {
    const hyperchab::CriterionResult r = hyperchab::run_criterion(id);
    std::cout << hyperchab::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
