#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace urnlab::cli {

// Runs one CLI invocation. `args` excludes the program name. Machine-readable
// output goes to `out`, usage errors to `err`.
// Exit codes: 0 success, 1 domain error (validation, non-unique stationary
// measure, failed synthesis), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urnlab::cli
