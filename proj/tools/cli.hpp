#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tennis::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNonTerminating = 3, kNumerical = 4 };

// Runs the command line `args` (without the program name). Data goes to
// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tennis::cli
