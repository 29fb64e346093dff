#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypharm {

enum ExitCode : int { kExitVerified = 0, kExitFalsified = 1, kExitUsage = 2 };

/// Runs the command line (arguments after the program name). The report goes
/// to --output or `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypharm
