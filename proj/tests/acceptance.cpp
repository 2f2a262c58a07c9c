// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <iostream>

#include "arcwave/checks.hpp"

int main() {
  using namespace arcwave::checks;
  int failed = 0;
  for (int id = 1; id <= kAcceptanceCount; ++id) {
    CheckResult r = acceptance(id);
    std::cout << format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  std::cout << kAcceptanceCount - failed << "/" << kAcceptanceCount << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
