#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qchar {

/// Runs the command line `args` (without the program name). JSON goes to
/// `out`, progress and diagnostics to `err`. Returns 0 on pass, 1 when a
/// verification fails, 2 on usage or internal errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qchar
