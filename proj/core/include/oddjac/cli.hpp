// Command line entry point (subcommands for curve deficiency/parity,
// density estimation, and pairing-group structure checks).
#pragma once

#include <iosfwd>

namespace oddjac::cli {

// Exit codes: 0 = decided / success, 1 = usage or internal error,
// 2 = completed but some decision had to be flagged as undecided.
//
// The stream overload writes reports to `out` and diagnostics to `err`;
// the two-argument form runs against std::cout / std::cerr.
int run(int argc, char** argv);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace oddjac::cli
