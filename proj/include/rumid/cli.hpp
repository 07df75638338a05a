#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rumid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitMalformed = 2;

/// Runs one command. args excludes the program name. JSON goes to `out`
/// (including error documents); warnings and help text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rumid::cli
