#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace btb::verify {

struct Options {
  int threads = 1;
  int enum_cap = 12;                  // max stabilizer dimension to enumerate
  long long brute_budget = 1LL << 22;  // exhaustive search points per simplex
  long long vertex_budget = 200000;
  int samples = 100;                  // random inputs for criteria 4 and 7
  std::uint32_t seed = 20240601;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool budget_exceeded = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriteria = 12;

/// Short name of criterion id (1-based).
std::string criterion_name(int id);

/// Runs one acceptance criterion. Library errors inside the check become a
/// failed result (budget errors flagged separately); nothing is thrown.
CheckResult run_criterion(int id, const Options& opt);

/// "PASS [id] name: detail" / "FAIL ...".
std::string format_line(const CheckResult& r);

}  // namespace btb::verify
