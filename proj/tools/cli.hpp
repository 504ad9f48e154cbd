#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wildhodge {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 property violation, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wildhodge
