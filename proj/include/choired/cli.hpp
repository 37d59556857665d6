#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace choired {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitHypothesis = 3,
  kExitTolerance = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default curve file bundled with the source tree.
std::string default_curve_file();

}  // namespace choired
