#pragma once

#include <iosfwd>

#include <json.hpp>

#include "hermnuc/config.hpp"

namespace hermnuc {

inline constexpr const char* kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitRange = 3,
  kExitMissingFile = 4,
  kExitNumerical = 5,
  kExitEvaluation = 6,
  kExitUnsupportedExponent = 7,
};

/// Runs the command and returns the full report (config, version, result,
/// timing). Writes side files (CSV, decomposition directory) when the
/// command calls for them. Throws the library's error types.
nlohmann::json execute(const ExperimentConfig& config);

/// execute() plus report writing and error mapping: the report goes to
/// config.out (or `out` when unset; for `kernel` and `decompose`, config.out
/// is a directory and receives report.json), errors go to `err` as a JSON
/// object. Returns the exit code.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Exit code and JSON error object for an in-flight exception.
int describe_current_exception(nlohmann::json& error);

}  // namespace hermnuc
