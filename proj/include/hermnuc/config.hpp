#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hermnuc {

/// Parameters of one CLI invocation. Stored as a flat "key = value" text
/// file; command-line flags override file values.
struct ExperimentConfig {
  std::string command;
  std::string symbol = "heat:t=1";
  /// Input function for `transform` / `apply`, an expression in x1..xn.
  std::string function = "exp(-x1^2/2)";
  int n = 1;
  int N = 10;
  /// Nodes per axis; 0 selects N + 8.
  int Q = 0;
  double p1 = 2.0;
  double p2 = 2.0;
  double r = 1.0;
  int k = 10;
  double tol = 1e-12;
  int Nmax = 60;
  std::string out;
  std::uint64_t seed = 42;

  /// Assigns one key; throws ParseError on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  /// Throws RangeError when a parameter is outside its declared range.
  void validate() const;
  /// Copy with defaults made explicit (Q resolved).
  ExperimentConfig resolved() const;

  std::string to_text() const;
  static ExperimentConfig from_text(std::string_view text);
  static ExperimentConfig from_file(const std::string& path);

  nlohmann::json to_json() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses an exponent; accepts "inf".
double parse_exponent(const std::string& text);

}  // namespace hermnuc
