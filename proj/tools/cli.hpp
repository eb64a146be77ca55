#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linkint::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;     ///< Parse, dimension, or input errors.
inline constexpr int kExitRejected = 3;  ///< Snap rejection, failed check, not visible.
inline constexpr int kExitSingular = 4;  ///< Near-singular integrand.

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linkint::cli
