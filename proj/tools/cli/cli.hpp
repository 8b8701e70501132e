#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace auction::cli {

inline constexpr const char* kToolName = "auction-impact";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,     // malformed or inconsistent input
  kExitNoCross = 3,
  kExitTooFewPoints = 4,
  kExitUsage = 64,
};

// Runs one command line (without the program name). Reports go to `out`
// unless -o names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace auction::cli
