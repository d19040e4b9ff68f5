#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabkit::cli {

/// Runs one command; args exclude the program name. Returns the exit code:
/// 0 for definitive results, 2 for Unknown verdicts, 1 for input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabkit::cli
