#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prres::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kCheckFailed = 3, kInternalError = 4 };

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prres::cli
