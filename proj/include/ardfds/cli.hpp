#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ardfds {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFail = 1,         // verify-lemma1 found a violated bound
  kExitUsage = 2,        // bad or missing flags, invalid configuration
  kExitUnwritable = 3,   // output directory cannot be written
  kExitSolverAbort = 4,  // a solver aborted on some seed
};

/// Environment variable naming the default output directory of `run` and `gamma-grid`.
inline constexpr const char* kOutDirEnv = "ARDFDS_OUT_DIR";

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ardfds
