#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pegfinder {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on the given arguments (args[0] is the program name).
/// Human-readable output goes to `out`, errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace pegfinder
