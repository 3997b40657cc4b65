#ifndef HELLY_CLI_HPP
#define HELLY_CLI_HPP

#include <ostream>

namespace helly {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailed = 1,
  kExitMalformed = 2,
  kExitBudget = 3,
};

/// Parses argv and runs one subcommand. Results go to `out` (or --output),
/// diagnostics to `err`.
int cmd_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace helly

#endif  // HELLY_CLI_HPP
