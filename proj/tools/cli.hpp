#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitInputError = 2;
/// Unexpected failure inside the library (a bug, not bad input).
inline constexpr int kExitInternalError = 3;

inline constexpr std::size_t kDefaultMaxCells = 5'000'000;
inline constexpr std::int64_t kDefaultMaxResolution = 1 << 20;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumsetlab
