#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pti::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args exclude the program name). Output goes to
/// `out`, errors and the diagnostics line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pti::cli
