#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cmachine::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`; usage text and structured error messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One reproduced worked example and whether it matched.
struct GoldenCheck {
  std::string name;
  double expected;
  double actual;
  double tolerance;
  bool pass;
};

/// The worked numbers behind the `demo` subcommand.
std::vector<GoldenCheck> golden_checks();

}  // namespace cmachine::cli
