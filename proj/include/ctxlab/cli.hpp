#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxlab {

// argv-style arguments without the program name. Returns the process exit
// code: 0 success, 2 parse error, 3 precondition violation, 4 cap exceeded.
// All machine output goes to `out` as canonical JSON; human summaries go to
// `err` under --verbose.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctxlab
