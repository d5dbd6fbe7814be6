#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfa::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitCapacity = 3,
};

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfa::cli
