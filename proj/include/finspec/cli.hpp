#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace finspec::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finspec::cli
