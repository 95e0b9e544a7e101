#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfact::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kYes = 0, kNo = 1, kError = 2, kUnknown = 3 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics and timings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hfact::cli
