#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epistemo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,      // bad flags, missing or invalid input files
  kBackend = 3,    // endpoint transport or generation failure
  kInternal = 4,   // invariant breach
};

/// Runs one subcommand. `args` excludes the program name. The one-line JSON
/// summary goes to `out`, logs and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epistemo::cli
