#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>

#include "hermnuc/expression.hpp"
#include "hermnuc/multi_index.hpp"

namespace hermnuc {

enum class SymbolKind { kMultiplier, kPseudo };

/// A symbol m(x, nu) on R^n x N_0^n. Multipliers ignore x. Evaluators must
/// be safe to call concurrently.
class Symbol {
 public:
  using Evaluator = std::function<double(std::span<const double>, const MultiIndex&)>;
  using Parameters = std::map<std::string, std::string>;

  Symbol(int dimension, SymbolKind kind, Evaluator evaluator, std::string family,
         Parameters parameters = {});

  int dimension() const noexcept { return dimension_; }
  SymbolKind kind() const noexcept { return kind_; }
  bool is_multiplier() const noexcept { return kind_ == SymbolKind::kMultiplier; }
  const std::string& family() const noexcept { return family_; }
  const Parameters& parameters() const noexcept { return parameters_; }
  /// "family:key=value,..." for reports.
  std::string describe() const;

  double operator()(std::span<const double> x, const MultiIndex& nu) const {
    return evaluator_(x, nu);
  }
  /// Multiplier value m(nu); only valid for multipliers.
  double operator()(const MultiIndex& nu) const;

 private:
  int dimension_;
  SymbolKind kind_;
  Evaluator evaluator_;
  std::string family_;
  Parameters parameters_;
};

/// Heat semigroup exp(-t lambda_nu).
Symbol heat_symbol(int dimension, double t);
/// (1 + |nu|)^{-a}.
Symbol power_symbol(int dimension, double a);
/// Indicator of nu == nu0.
Symbol delta_symbol(const MultiIndex& nu0);
/// m == c.
Symbol constant_symbol(int dimension, double c);
/// Parsed expression; a multiplier exactly when it does not mention x.
Symbol expression_symbol(std::string_view text, int dimension);
/// alpha m1 + beta m2; a multiplier when both are.
Symbol linear_combination(double alpha, const Symbol& m1, double beta, const Symbol& m2);

/// Symbol table from CSV.
///
/// Multiplier tables have rows "nu1,...,nun,value". Pseudo tables start with
/// a header "# grid n=<n> Q=<Q>" declaring the tensor Gauss-Hermite grid,
/// followed by rows "x_index,nu1,...,nun,value" where x_index is the grid
/// point index. Entries not listed are zero. An optional column-name line is
/// skipped.
Symbol table_symbol(const std::string& path, int dimension);

/// "heat:t=1", "power:a=3", "delta:0" / "delta:1,2", "const:c=1",
/// "table:<path>", "expr:<expression>".
Symbol parse_symbol_spec(const std::string& spec, int dimension);

}  // namespace hermnuc
