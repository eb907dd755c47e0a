#pragma once

#include <optional>
#include <string>
#include <vector>

namespace spherecdf {

enum class VerifyScope { lemmas, appendix, all };

/// One numerical identity or inequality evaluated over a grid.
///
/// worst_residual is an absolute or relative error for identities and the
/// largest violation (clamped at 0) for inequalities; argmax is the grid
/// coordinate where it occurred.
struct CheckResult {
  std::string name;
  VerifyScope scope = VerifyScope::lemmas;
  double worst_residual = 0.0;
  double argmax = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Runs the grid and finite-difference checks on gamma, f+/-, alpha, g+/-
/// and the chi-square rearrangements. Each check uses its own nominal
/// tolerance unless tolerance_override is given. Requires grid_steps >= 100.
VerificationReport verify_lemmas(int grid_steps = 200,
                                 std::optional<double> tolerance_override = std::nullopt,
                                 VerifyScope scope = VerifyScope::all);

}  // namespace spherecdf
