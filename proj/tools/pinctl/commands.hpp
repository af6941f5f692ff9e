#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinctl::cli {

/// Runs one pinctl invocation. `args` excludes the program name.
/// Returns the process exit code: 0 on success, 1 on a library error,
/// CLI11's code on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinctl::cli
