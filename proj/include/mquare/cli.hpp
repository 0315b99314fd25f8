#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mquare {

/// Exit status of one command.
enum ExitCode : int { kExitOk = 0, kExitFindings = 1, kExitUsage = 2 };

/// Runs one command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mquare
