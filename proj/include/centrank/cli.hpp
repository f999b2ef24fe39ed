#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace centrank::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs the command line and returns the process exit code:
/// 0 success, 2 usage error, 3 input error, 4 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace centrank::cli
