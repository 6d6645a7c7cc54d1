#pragma once

#include <optional>
#include <string>
#include <vector>

#include "btb/io.hpp"

namespace btb::cli {

inline constexpr const char* kTruncationCaption =
    "truncated: computed on a finite ball of the building; values describe this window only, not the infinite "
    "complex";

/// Exit codes.
enum Exit : int { kPass = 0, kAssertion = 1, kUsage = 2, kBudget = 3 };

struct Config {
  std::string command;
  int p = 2;
  int n = 1;
  std::optional<std::vector<int>> modulus;
  int r = 2;
  std::optional<std::string> ideal;         // level generator, as given
  std::optional<std::string> coarse_ideal;  // restrict only
  int radius = 1;
  std::optional<std::string> center;  // class JSON (inline or @file)
  std::optional<std::string> sigma;   // W_1 rows as K-matrix JSON (inline or @file)
  std::string output;                 // empty = stdout
  std::string format = "auto";        // json | dot | text
  int threads = 1;
  int enum_cap = 12;
  long long solution_cap = 1LL << 20;
  long long vertex_budget = 200000;
  long long brute_budget = 1LL << 22;
  std::optional<int> deg_bound;
  std::vector<int> simplex{0};
  std::optional<std::vector<int>> target;
  bool brute = false;
  bool augmented = true;
  std::vector<int> criteria;  // empty = all
  int samples = 100;
  unsigned seed = 20240601;

  // Resolved by parse_config.
  const Field* field = nullptr;
  std::optional<Poly> level;
  std::optional<Poly> coarse_level;
  std::optional<LatticeClass> center_class;
  std::optional<SubspaceK> w1;
};

/// Flags override values from `file` (key = value lines, keys are the long
/// flag names). Budget options also read BTB_ENUM_CAP, BTB_SOLUTION_CAP,
/// BTB_VERTEX_BUDGET and BTB_BRUTE_BUDGET. Throws UsageError naming the
/// offending flag or key.
Config parse_config(const std::vector<std::string>& args, const std::optional<std::string>& file = std::nullopt);

struct RunReport {
  std::string command;
  io::Json config;
  io::Json result;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // failed assertions; nonempty -> exit 1
  bool budget_exceeded = false;
  std::string text;  // DOT or text rendering, when requested
  double seconds = 0;

  int exit_code() const;
  /// Schema-stable JSON (timing excluded so runs compare byte for byte).
  io::Json to_json() const;
};

RunReport run(const Config& cfg);

/// argv entry point: parses, runs, writes output, returns the exit code.
int main(int argc, char** argv);

}  // namespace btb::cli
