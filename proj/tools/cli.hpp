#ifndef CHOWZERO_TOOLS_CLI_HPP_
#define CHOWZERO_TOOLS_CLI_HPP_

#include <iosfwd>

namespace chowzero::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kBudgetExhausted = 3,
  kCompareMismatch = 4,
};

// Runs one command line. Results go to `out`, diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chowzero::cli

#endif  // CHOWZERO_TOOLS_CLI_HPP_
