#pragma once

#include <string>
#include <vector>

namespace tcg {

struct ClaimResult {
  std::string id;
  std::string claim;
  bool passed = false;
  /// What was actually computed, shown next to the verdict.
  std::string observed;
};

/// Recomputes every claim made about the built-in fixtures, in a fixed order.
std::vector<ClaimResult> run_fixture_claims();

}  // namespace tcg
