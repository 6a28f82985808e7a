#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swarmcit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kStuck = 2;
inline constexpr int kTimeout = 3;
inline constexpr int kVerifyFailed = 4;

// Runs the command line. Machine-readable output goes to `out`, diagnostics
// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swarmcit::cli
