#pragma once

#include <string>
#include <vector>

namespace koba::cli {

enum ExitCode : int { ok = 0, invalid_input = 2, outside = 3, boundary = 4, resource_limit = 5 };

struct CommandResult {
  int exit_code = ok;
  std::string out;      ///< stdout: JSON payload, or text for `domain` without --json
  std::string summary;  ///< one human-readable line (stderr)
};

/// Parses and runs one command. `args` excludes the program name.
/// Never throws; errors map to exit codes with a message in `summary`.
CommandResult dispatch(const std::vector<std::string>& args);

/// Applies KOBA_THREADS (a positive integer) as a cap on OpenMP threads.
/// Returns false when the variable is set but malformed.
bool apply_thread_cap();

}  // namespace koba::cli
