#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linkfdi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInfeasible = 3;

/// Command-line entry point. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace linkfdi
