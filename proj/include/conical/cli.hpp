#pragma once

#include <ostream>

namespace conical::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kUnsupported = 2,
  kNumerical = 3,
  kMalformed = 64,
};

/// Entry point of the `conical` executable. Results go to --output or `out`;
/// diagnostics and the bench table go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conical::cli
