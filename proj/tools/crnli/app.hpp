#pragma once

namespace crnli::cli {

// Exit codes, also documented in --help.
enum ExitCode : int {
  kOk = 0,
  kUsageError = 2,
  kFileMissing = 3,
  kParseError = 4,
  kInvariantViolation = 5,
  kComputationFailed = 6,
  kWriteError = 7,
};

/// Parse arguments, dispatch the subcommand, write artifacts. Failures are
/// reported as a machine-readable JSON record on stderr and a nonzero exit
/// code.
int run(int argc, const char* const* argv);

}  // namespace crnli::cli
