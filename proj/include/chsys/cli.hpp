#pragma once

#include <ostream>

namespace chsys {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitBlowup = 3;

/// Parses argv and runs one subcommand: simulate, iterate, analyze, bounds,
/// equivalence, probe-inequalities or continuity. Returns the process exit status.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chsys
