#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubeopt::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kInputError = 2 };

/// Runs one CLI invocation; `args` excludes the program name. Results go to `out`
/// (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubeopt::cli
