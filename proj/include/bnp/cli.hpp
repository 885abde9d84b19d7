#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bnp::cli {

inline constexpr const char* kVersion = "bnpairs 0.1.0";

// Runs one command line (program name excluded). Reports go to `out`, errors
// to `err`. Returns the process exit code: 0 computed, 2 invalid input,
// 3 enumeration budget exceeded, 1 internal error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace bnp::cli
