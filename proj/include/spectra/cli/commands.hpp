#pragma once

namespace spectra::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvariant = 2,
  kExitParse = 64,
  kExitSpec = 65,
};

/// Entry point of the `spectra` tool.
int run(int argc, char** argv);

}  // namespace spectra::cli
