#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "swirl/config.hpp"

namespace swirl {

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<int> grid;  // overrides parameters.grid
  bool quiet = false;
};

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_hypothesis = 2 };

/// Runs cfg.command, writing artifacts into options.out_dir and a short
/// JSON summary to `out` (unless quiet). Errors are reported to `err` as a
/// single JSON line and mapped to an exit code; nothing is thrown.
int run_command(const RunConfig& cfg, const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Fixed-width scientific form with 17 significant digits.
std::string format_csv_number(double value);

/// {"error": kind, "message": text} on one line.
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace swirl
