#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latmean::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitPrecondition = 4;

/// Runs one subcommand (args exclude the program name). All output goes to
/// the given streams; identical inputs and seed produce byte-identical
/// output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latmean::cli
