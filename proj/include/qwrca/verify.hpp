#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qwrca {

struct CheckResult {
  std::string name;
  bool pass;
  double worst;      ///< worst residual observed (or smallest margin)
  double tolerance;  ///< threshold the residual is held against
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Shrinks sample counts and step caps for smoke runs; thresholds are
  /// unchanged.
  bool quick = false;
};

/// Runs the full verification suite (twelve checks) and reports one result
/// per check, in a fixed order. Deterministic for a given seed.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace qwrca
