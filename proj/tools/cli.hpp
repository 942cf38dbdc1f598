#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace procell::cli {

/// Exit statuses: 0 success, 1 verification failure, 2 usage or parse error.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace procell::cli
