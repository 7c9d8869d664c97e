#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// it can be driven in-process by tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace mvote::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Thread count used when --threads is absent: MVOTE_THREADS if set, else the
/// hardware concurrency. Never changes results, only speed.
int default_threads();

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvote::cli
