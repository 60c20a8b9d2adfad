#pragma once

#include <iosfwd>

namespace relight {

/// Entry point of the `relight` tool. Returns the process exit code:
/// 0 success, 1 usage, 2 I/O, 3 validation. Errors go to `err` as a single
/// `error[CODE]: message` line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relight
