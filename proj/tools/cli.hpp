#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spherecdf::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,         ///< success, or every simulated bound dominated
  kExitViolation = 1,  ///< a bound or verification check failed
  kExitUsage = 2,      ///< bad flags or unreadable input
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spherecdf::cli
