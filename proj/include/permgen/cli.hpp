#pragma once

#include <iosfwd>

namespace permgen::cli {

/// Process exit statuses.
enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kInputError = 2, kConfigError = 3 };

/// Entry point of the `permgen` tool with subcommands analyze, simulate and
/// props. Never throws; failures are reported on `err` and mapped to an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace permgen::cli
