#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gkz {

/// Command-line entry point.  Returns the process exit code: 0 on success,
/// 2 for usage/validation problems, 3 for numeric domain failures.  Success
/// output goes to `out`; on error nothing is written to `out` and a
/// diagnostic goes to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gkz
