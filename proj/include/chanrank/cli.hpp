#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace chanrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand (rank, baseline, curves, fit, simulate). args excludes
// the program name. Returns the process exit status.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace chanrank
