#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace psds {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDataError = 1, kExitUsageError = 2 };

/// Runs the `psds-eval` command line. `args` excludes the program name.
/// Reports go to `out` (or the --out file), diagnostics to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace psds
