#pragma once

namespace knotlight::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kIoError = 3 };

/// Entry point of the `knotlight` tool; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace knotlight::cli
