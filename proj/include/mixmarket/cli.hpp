#pragma once

#include <vector>
#include <string>

namespace mixmarket::cli {

/// Dispatches one CLI invocation (argv without the program name).
/// Subcommands: solve, sweep, condition, simulate, verify, figures.
/// Exit codes: 0 success, 2 invalid usage/config, 3 regularity failure,
/// 4 solver convergence failure.
int run_command(const std::vector<std::string>& args);

} // namespace mixmarket::cli
