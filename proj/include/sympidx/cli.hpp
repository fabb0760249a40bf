#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sympidx {

// Runs one command line (without the program name). Returns the process exit status:
// 0 success, 2 computation error or failed verification, 3 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sympidx
