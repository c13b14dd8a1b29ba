#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpd::cli {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Runs one command. args excludes the program name. Reports go to `out`,
/// diagnostics to `err`. Returns 0 on any computed verdict, 2 on input
/// errors, 3 on engine errors raised while computing.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gpd::cli
