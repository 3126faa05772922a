#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linsolve {

// Command-line front end over already-split arguments (without argv[0]).
// Reports go to `out`, error messages to `err`.  Exit codes: 0 success or
// solvable, 1 parse/validation failure, 2 solver-level errors (bad or
// oversized k, method not applicable), 3 mathematically unsolvable,
// 4 internal invariant violation or failed selfcheck.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace linsolve
