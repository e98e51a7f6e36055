#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extremal::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kUsage = 2,
  kIo = 3,
  kInconclusive = 4,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extremal::cli
