#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "hermnuc/multi_index.hpp"

namespace hermnuc {

/// Arithmetic expression over the symbol variables
///   x1..xn, nu1..nun, |nu|, lambda
/// with + - * / ^ (right-associative), unary minus, parentheses, numeric
/// literals and the functions exp, log, abs. Unknown identifiers and wrong
/// arities are rejected at parse time with their line/column.
class Expression {
 public:
  /// Throws ParseError.
  static Expression parse(std::string_view text, int dimension);

  double evaluate(std::span<const double> x, const MultiIndex& nu) const;

  int dimension() const noexcept { return dimension_; }
  bool depends_on_x() const noexcept { return uses_x_; }
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  Expression() = default;

  std::shared_ptr<const Node> root_;
  std::string text_;
  int dimension_ = 1;
  bool uses_x_ = false;
};

}  // namespace hermnuc
