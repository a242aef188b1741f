#pragma once

#include <string>

namespace twojet::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

/// Entry point shared by the executable and the CLI tests.
int run(int argc, const char* const* argv);

}  // namespace twojet::cli
