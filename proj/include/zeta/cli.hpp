#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;      // a parameter failed validation
inline constexpr int kExitInconsistent = 2; // computed data contradicts the theory
inline constexpr int kExitUsage = 64;       // unknown command

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace zeta::cli
