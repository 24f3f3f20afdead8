#pragma once

#include <iosfwd>

namespace ulmext::cli {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2 };

/// Entry point of the ulmext tool. Input named "-" is read from `in`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace ulmext::cli
