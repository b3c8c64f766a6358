#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mmspace {

// Runs one mmtool subcommand. `args` excludes the program name. Returns 0 on
// success, 1 when a verification report fails and 2 on usage or input
// errors (message on `err`).
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace mmspace
