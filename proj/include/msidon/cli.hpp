#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msidon {

// Dispatches one subcommand. Returns the process exit status: 0 on success,
// 1 on invalid arguments or unknown subcommand, 2 when a documented resource
// budget is exceeded. Reports go to `out`; usage and errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msidon
