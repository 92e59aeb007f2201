#pragma once

#include <iosfwd>

namespace percolab {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitContract = 5;

// Runs the tool with the given arguments (argv[0] is the program name).
// Results go to `out` unless --output names a file; errors are written to
// `err` as a JSON object {"error": {"type", "message", "diagnostics"}}.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace percolab
