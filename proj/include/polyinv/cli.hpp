#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyinv {

// Runs the command line tool on `args` (without the program name).
// Exit status: 0 success / True / NeverTerminates, 1 False / Terminates, 2 error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyinv
