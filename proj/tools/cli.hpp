#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rifs::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kVerificationFailed = 2,
  kIoError = 3,
};

/// Runs one invocation. args[0] is the program name. Results go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rifs::cli
