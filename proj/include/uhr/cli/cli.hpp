#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uhr::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, config or validation errors
inline constexpr int kExitRuntime = 2;  // I/O, scorer, numerical failures

// Entry point of uhrtool. args[0] is the program name. Results go to `out`,
// diagnostics to `err`; progress lines from the pipeline go to stderr.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uhr::cli
