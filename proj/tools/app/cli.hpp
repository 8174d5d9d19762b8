#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ghostcs/errors.hpp"

namespace ghostcs::app {

/// Process exit codes of the ghostcs tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,      ///< bad flags or parameters
  kExitIo = 3,         ///< unreadable/unwritable files, malformed or unsupported formats
  kExitNumerical = 4,  ///< solver divergence or degenerate statistics
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs the tool on `args` (without the program name), writing normal output
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghostcs::app
