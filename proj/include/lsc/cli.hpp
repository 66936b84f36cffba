#pragma once

#include <iosfwd>

namespace lsc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // usage, configuration and I/O errors
  kExitParse = 2,
  kExitDeadlock = 3,
  kExitInfeasible = 4,
};

/// Entry point of the `lsc` tool: subcommands compile, estimate, physical, bench, pipeline.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace lsc
