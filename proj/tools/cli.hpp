#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace sqfree::cli {

// Runs one command. `args` excludes the program name. Returns 0 on success,
// 2 on a validation error and 1 on an operational error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sqfree::cli
