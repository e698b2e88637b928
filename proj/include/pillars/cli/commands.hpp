#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pillars::cli {

/// Parses `args` (without the program name) and runs one subcommand.
/// Returns the process exit status: 0 ok, 1 fatal, 2 usage or config error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pillars::cli
