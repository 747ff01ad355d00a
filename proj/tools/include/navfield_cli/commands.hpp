#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace navfield::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad arguments or unreadable/invalid input
inline constexpr int kExitRuntime = 3;  // predictor or simulation failure

/// Runs `navfield <subcommand> ...`. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace navfield::cli
