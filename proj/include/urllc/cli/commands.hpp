#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace urllc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidArguments = 2,
  kExitUnsatisfiable = 3,
  kExitIoFailure = 4,
};

/// Runs the urllc-pls command line. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urllc::cli
