#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kimlab::cli {

/// Exit codes: 0 PASS / SAT, 1 FAIL / UNSAT, 2 usage, parse or search-limit
/// errors.
enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kimlab::cli
