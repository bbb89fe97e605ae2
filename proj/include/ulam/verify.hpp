// Invariant suites shared by `ulam verify` and the acceptance binary. Each
// check is one numbered criterion with a pass flag and a short detail line.
#pragma once

#include <string>
#include <vector>

namespace ulam {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

CheckResult run_criterion(int id, int workers = 1);

/// "all", "exact", "perm", "walk", "genfun", "elliptic", "bounds".
std::vector<std::string> suite_names();
/// Criterion ids making up a suite; DomainError for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<CheckResult> run_suite(const std::string& suite, int workers = 1);

/// "PASS  4 name: detail [1.23 s]".
std::string format_result(const CheckResult& r);

}  // namespace ulam
