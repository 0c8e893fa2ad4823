#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcg {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  ///< malformed input, unknown fixture, bad option value
inline constexpr int kExitUsage = 2;  ///< command line could not be parsed
inline constexpr int kExitAssert = 3; ///< --assert given and the verdict was negative

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or to the --out file), diagnostics to `err`. A `-` input reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tcg
