#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proplab {

/// Runs one CLI invocation.  Reports go to `out`, usage errors to `err`.
/// Exit codes: 0 pass/success, 1 verdict failure, 2 usage or construction
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proplab
