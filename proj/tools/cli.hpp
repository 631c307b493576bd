#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfm::cli {

/// Runs the command line `args` (without the program name). Returns the
/// exit status: 0 pass, 1 fail, 2 usage or resource error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cfm::cli
