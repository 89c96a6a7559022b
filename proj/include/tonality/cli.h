#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tonality::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kIoFailure = 1,
  kUsageError = 2,
  kPartialFailure = 3,
};

/// Runs the `tonality` command line. `args` excludes the program name.
/// Standard input/output are injected so the commands can run in-process.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tonality::cli
