#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limitalg::cli {

/// Runs one invocation; args exclude the program name. Returns the exit code:
/// 0 verdict established, 2 unknown or inconclusive, 1 input error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace limitalg::cli
