#pragma once

#include <iosfwd>

namespace mogp::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kBudget = 3,
};

// Entry point of the `mogp` tool, with the output streams injectable so the
// command surface can be tested in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace mogp::cli
