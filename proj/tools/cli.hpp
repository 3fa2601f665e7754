#pragma once

#include <iosfwd>

namespace tdenoise::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kArgumentError = 2,
  kIoError = 3,
  kInvariantError = 4,
};

/// Entry point of the `tdenoise` tool with injectable streams.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdenoise::cli
