#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs the `zerolab` command line. `args` excludes the program name.
/// Results go to `out` (or the --output file), diagnostics to `err`;
/// nothing is written to `out` when the command fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zerolab::cli
