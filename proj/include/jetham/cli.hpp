#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jetham {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on errors in the problem or the mathematics, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetham
