#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lattab::cli {

// Exit codes: 0 success, 1 numeric failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lattab::cli
