#pragma once

#include <iosfwd>

namespace vmod::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kNonConvergence = 2,
  kConfigError = 3,
  kBlowup = 4,
};

/// Entry point of the `vmod` tool.  Diagnostics go to err, progress to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vmod::cli
