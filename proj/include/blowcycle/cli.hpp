#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blowcycle {

// Entry point of the blowcycle tool; args excludes the program name.
// Returns 0 on success, 1 on a failed assertion or checkpoint, 2 on usage or
// parse errors, 3 on engine errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blowcycle
