#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chang {

// Runs one CLI invocation. Exit codes: 0 success, 2 invalid input or
// splitting data, 3 flag mismatch, 4 indeterminate (budget exhausted).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chang
