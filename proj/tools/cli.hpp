#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etf::cli {

// Runs one command line (without the program name). Returns the process exit
// code: 0 success/pass, 1 verification failure, 2 usage or I/O error.
// Machine-readable key=value lines go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etf::cli
