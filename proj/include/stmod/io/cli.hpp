#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stmod::io {

enum ExitCode : int { kOk = 0, kUsage = 1, kOutOfScope = 2, kUndecided = 3, kInternal = 4 };

/// Runs one command. args excludes the program name. Reports go to out
/// (human text, or one JSON document with --json); diagnostics go to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stmod::io
