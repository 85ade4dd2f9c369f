#pragma once

#include <ostream>
#include <span>
#include <string>

namespace lbpkit::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Primary output goes
/// to `out` unless the subcommand was given -o; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lbpkit::cli
