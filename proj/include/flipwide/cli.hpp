#pragma once

#include <iosfwd>

namespace flipwide::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kBudget = 3,
};

/// Runs one command line. `in` backs "-g -"; the report goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace flipwide::cli
