#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sslforms::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidInput = 2,
  kDisagreement = 3,
  kTheoremViolation = 4,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sslforms::cli
