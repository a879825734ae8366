#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fareyforge {

// Dispatches one CLI invocation (without the program name). Exit codes:
// 0 success / witness found / valid, 1 verified negative, 2 budget exhausted
// or early stop, >= 3 usage or input errors.
int run_invocation(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fareyforge
