#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace utgrad {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 semantic failure, 2 malformed input. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace utgrad
