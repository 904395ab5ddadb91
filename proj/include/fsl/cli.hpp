#pragma once

#include <ostream>
#include <span>
#include <string>

#include "fsl/semilattice.hpp"

namespace fsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out is given; diagnostics and --meta go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// DOT digraph of the Hasse diagram, optionally with dashed generator arcs.
std::string hasse_dot(const FSemilattice& a, bool with_actions);

}  // namespace fsl::cli
