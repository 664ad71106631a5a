#pragma once

#include <ostream>

namespace geolab::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kUnsupported = 3,
  kScenarioFailure = 4,
};

/// Parses argv, dispatches the subcommand and writes reports. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geolab::cli
