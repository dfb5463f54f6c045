#pragma once
// Command-line driver: flag parsing, precondition gates, dispatch into the
// checking modules, and report emission. Separated from main() so tests can
// run the tool in-process with captured streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace hodgesig {

/// Run the tool on argv-style tokens (without the program name). The report
/// goes to out, diagnostics to err. Returns the process exit status:
/// 0 every check passed, 1 some conjecture or theorem check failed,
/// 2 usage or precondition error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hodgesig
