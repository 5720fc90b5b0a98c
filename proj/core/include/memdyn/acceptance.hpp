#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace memdyn {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::int64_t T = 1'000'000;
  std::uint64_t seed = 7;
  std::vector<int> only;  // empty: all criteria
};

inline constexpr int kCriterionCount = 10;

std::string criterion_name(int id);

// Runs the selected criteria in order; when `log` is given, writes one
// "PASS|FAIL <id> <name>: <detail>" line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* log = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace memdyn
