#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace situp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInternal = 2 };

// Parses args (without the program name) and runs the selected subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace situp::cli
