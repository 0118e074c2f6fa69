#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oplab {

// Dispatches one invocation. args excludes the program name. Exit codes:
// 0 success, 1 verify failure, 2 precondition violation, 64 usage, 65 parse.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oplab
