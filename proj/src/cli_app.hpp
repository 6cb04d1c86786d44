#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kfib::cli {

// Parses and executes one command line. `args` excludes the program name.
// Data goes to `out`, diagnostics (including timing) to `err`.
// Exit codes: 0 ok, 1 verification failure, 2 usage error,
// 3 numeric/convergence failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kfib::cli
