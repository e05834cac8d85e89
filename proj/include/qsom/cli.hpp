#pragma once

#include <string>
#include <vector>

namespace qsom::cli {

/// Entry point behind main(): parses `run`, `batch` or `sweep` invocations,
/// executes them, and returns the process exit code (0 success, 1 runtime
/// failure, 2 invalid arguments or configuration).
int dispatch(const std::vector<std::string>& args);
int dispatch(int argc, const char* const* argv);

}  // namespace qsom::cli
