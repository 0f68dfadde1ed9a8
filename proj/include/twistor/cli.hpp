#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistor {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitDomain = 3,
  kExitNumerical = 4,
};

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistor
