#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace endlab::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one command line (without the program name). Exit codes: 0 pass,
// 1 mathematical violation, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace endlab::cli
