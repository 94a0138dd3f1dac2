#pragma once

#include "b0box/region.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace b0box::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 2,
  kBadArguments = 3,
};

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Inline comma-separated list, or the path of a one-column CSV file (an
/// optional non-numeric header line is skipped).
Vector parse_vector(const std::string& text);

}  // namespace b0box::cli
