#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace recordlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation failure or a computation that missed its target
inline constexpr int kExitUsage = 2;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recordlab::cli
