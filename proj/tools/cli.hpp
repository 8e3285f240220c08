#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diracgraph::cli {

enum ExitCode : int { kOk = 0, kRefused = 1, kInputError = 2 };

// Runs one command line (args[0] is the program name). The payload goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace diracgraph::cli
