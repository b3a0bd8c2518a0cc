#pragma once

// Entry point of the catbell command-line tool, callable in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace catbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name) and returns the
/// process exit code. Reports and CSV go to `out` unless --out is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Round-trip formatting used for every CSV float (17 significant digits).
std::string format_double(double v);

}  // namespace catbell::cli
