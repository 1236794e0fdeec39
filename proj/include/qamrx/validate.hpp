#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qamrx {

struct CheckResult {
  std::string name;
  double expected = 0.0;
  double got = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ValidateOptions {
  /// Multiplies every tolerance; values below 1 tighten the suite.
  double tolerance_scale = 1.0;
  std::uint64_t trials = 200000;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
};

/// Built-in oracle suite: closed forms, quadrature, exhaustive enumeration,
/// Monte Carlo agreement and POVM certificates.
std::vector<CheckResult> run_validation(const ValidateOptions& options = {});

void print_report(std::ostream& os, const std::vector<CheckResult>& checks);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace qamrx
