#pragma once

#include <ostream>

namespace connections {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitInvalidInput = 2,
  kExitUnsolved = 3,
};

// Entry point behind the `connections` binary. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace connections
