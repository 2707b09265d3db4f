#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dspace::cli {

/// Exit codes of the dspace tool.
enum ExitCode : int {
  kOk = 0,
  kViolation = 1,  // a verdict disagreement or an axiom violation
  kUsage = 2,      // bad flags or a malformed space file
};

/// Runs one dspace command line (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dspace::cli
