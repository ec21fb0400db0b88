#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace closurelab {

// Runs one CLI invocation. Exit codes: 0 success, 1 domain error
// (diagnostic on err), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace closurelab
