#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace witness {

inline constexpr int kExitPass = 0;
inline constexpr int kExitNoDecision = 2;
inline constexpr int kExitInputError = 3;

/// Command-line driver. `args` excludes the program name. The report goes
/// to `out` (or --out FILE), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace witness
