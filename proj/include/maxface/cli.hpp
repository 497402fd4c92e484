#pragma once

#include <ostream>

namespace maxface::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `maxface` tool. Reports go to `out`, diagnostics to
/// `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxface::cli
