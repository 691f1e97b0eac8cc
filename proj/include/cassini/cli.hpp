#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cassini {

/// Exit codes: 0 success, 1 numerical failure, 2 invalid input or usage,
/// 3 a rigorous region missed an eigenvalue in `verify`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitViolation = 3;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cassini
