#pragma once

#include <string>
#include <vector>

namespace ranktwo {

/// Runs the command-line front end. Returns the process exit code:
/// 0 success, 2 argument/input parse error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace ranktwo
