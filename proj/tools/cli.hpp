#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eulerchar {

// Runs one CLI invocation.  `args` excludes the program name.  Returns the
// process exit status: 0 on success (and on identities that hold), 1 when a
// checked identity fails, 2 on bad input or usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eulerchar
