#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irisvc::cli {

// Exit codes: 0 success or match, 1 clean non-match, 2 any error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNoMatch = 1;
inline constexpr int kExitError = 2;

// `args` excludes the program name. Results go to `out` as "key: value"
// lines, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irisvc::cli
