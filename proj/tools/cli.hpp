#pragma once

// Batch front end: subcommands mapped to library operations, JSON or CSV out.

#include <ostream>

namespace k3::cli {

enum ExitCode : int { kPass = 0, kFailed = 1, kUsage = 2, kNumeric = 3 };

/// Parses argv, runs the requested operation and writes the result to out
/// (or to --out FILE). Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out);

}  // namespace k3::cli
