#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abscissa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitViolations = 3;

/// Runs one command line (args excludes the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abscissa::cli
