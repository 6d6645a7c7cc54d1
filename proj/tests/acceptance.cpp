#include <iomanip>
#include <iostream>

#include "btb/verify.hpp"

int main() {
  btb::verify::Options opt;
  int failed = 0;
  for (int id = 1; id <= btb::verify::kCriteria; ++id) {
    const btb::verify::CheckResult r = btb::verify::run_criterion(id, opt);
    std::cout << btb::verify::format_line(r) << std::endl;
    std::cerr << "  criterion " << id << " took " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
