#pragma once

#include <iosfwd>

namespace qfloquet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point shared by the executable and the tests. Reports go to `out`
/// (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfloquet::cli
