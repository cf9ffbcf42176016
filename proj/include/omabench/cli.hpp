#pragma once

#include <iosfwd>

namespace omabench {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/**
 * Entry point of the oma_bench executable.
 *
 * Subcommands: simulate, corrupt, identify, bench, report. Returns 0 on
 * success, 1 on usage or input errors and 2 on numerical failures.
 */
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace omabench
