#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deblur::tools {

/// Parses `args` (without the program name) and dispatches to the selected
/// subcommand. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deblur::tools
