#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coax::cli {

/// Exit codes.
enum Exit : int { derivable = 0, not_derivable = 1, usage = 2, cap = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace coax::cli
