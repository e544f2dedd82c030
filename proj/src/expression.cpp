#include "hermnuc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "hermnuc/errors.hpp"

namespace hermnuc {

struct Expression::Node {
  enum class Kind { kNumber, kX, kNu, kDegree, kLambda, kNeg, kAdd, kSub, kMul, kDiv, kPow,
                    kExp, kLog, kAbs };
  Kind kind = Kind::kNumber;
  double number = 0.0;
  int axis = 0;
  std::unique_ptr<const Node> lhs;
  std::unique_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;
using NodePtr = std::unique_ptr<const Node>;

NodePtr leaf(Kind kind, double number = 0.0, int axis = 0) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->number = number;
  n->axis = axis;
  return n;
}

NodePtr unary(Kind kind, NodePtr arg) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->lhs = std::move(arg);
  return n;
}

NodePtr binary(Kind kind, NodePtr a, NodePtr b) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  NodePtr parse_all() {
    auto root = parse_sum();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

  bool uses_x() const { return uses_x_; }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr parse_sum() {
    auto lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Kind::kAdd, std::move(lhs), parse_product());
      } else if (accept('-')) {
        lhs = binary(Kind::kSub, std::move(lhs), parse_product());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Kind::kMul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = binary(Kind::kDiv, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than ^, so -2^2 == -4.
  NodePtr parse_unary() {
    if (accept('-')) return unary(Kind::kNeg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_primary();
    if (accept('^')) return binary(Kind::kPow, std::move(base), parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      expect(')');
      return inner;
    }
    if (c == '|') {
      const std::size_t start = pos_;
      ++pos_;
      skip_space();
      const std::string name = read_identifier();
      skip_space();
      if (name != "nu" || !accept('|')) fail_at("expected '|nu|'", start);
      return leaf(Kind::kDegree);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    char* end = nullptr;
    const std::string copy(text_.substr(pos_));
    const double v = std::strtod(copy.c_str(), &end);
    const std::size_t consumed = static_cast<std::size_t>(end - copy.c_str());
    if (consumed == 0) fail("malformed number");
    pos_ += consumed;
    return leaf(Kind::kNumber, v);
  }

  std::string read_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // x<j> / nu<j> with 1 <= j <= n; returns 0 when the suffix is not an axis.
  int axis_suffix(const std::string& name, std::size_t prefix) const {
    if (name.size() <= prefix) return 0;
    int j = 0;
    for (std::size_t i = prefix; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
      j = j * 10 + (name[i] - '0');
      if (j > 1000000) return 0;
    }
    return j;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    const std::string name = read_identifier();
    if (name == "exp" || name == "log" || name == "abs") {
      const Kind kind = name == "exp" ? Kind::kExp : name == "log" ? Kind::kLog : Kind::kAbs;
      if (!accept('(')) fail_at(name + " must be called with one argument", start);
      if (accept(')')) fail_at(name + " expects 1 argument, got 0", start);
      auto arg = parse_sum();
      if (accept(',')) fail_at(name + " expects 1 argument, got more", start);
      expect(')');
      return unary(kind, std::move(arg));
    }
    if (name == "lambda") return leaf(Kind::kLambda);
    if (name.rfind("nu", 0) == 0) {
      const int j = axis_suffix(name, 2);
      if (j >= 1 && j <= dimension_) return leaf(Kind::kNu, 0.0, j - 1);
      fail_at("unknown identifier '" + name + "' (dimension is " + std::to_string(dimension_) +
                  ")",
              start);
    }
    if (name.rfind('x', 0) == 0) {
      const int j = axis_suffix(name, 1);
      if (j >= 1 && j <= dimension_) {
        uses_x_ = true;
        return leaf(Kind::kX, 0.0, j - 1);
      }
    }
    fail_at("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
  bool uses_x_ = false;
};

double eval(const Node& node, std::span<const double> x, const MultiIndex& nu) {
  switch (node.kind) {
    case Kind::kNumber: return node.number;
    case Kind::kX: return x[static_cast<std::size_t>(node.axis)];
    case Kind::kNu: return nu[node.axis];
    case Kind::kDegree: return nu.degree();
    case Kind::kLambda: return 2.0 * nu.degree() + nu.dimension();
    case Kind::kNeg: return -eval(*node.lhs, x, nu);
    case Kind::kAdd: return eval(*node.lhs, x, nu) + eval(*node.rhs, x, nu);
    case Kind::kSub: return eval(*node.lhs, x, nu) - eval(*node.rhs, x, nu);
    case Kind::kMul: return eval(*node.lhs, x, nu) * eval(*node.rhs, x, nu);
    case Kind::kDiv: return eval(*node.lhs, x, nu) / eval(*node.rhs, x, nu);
    case Kind::kPow: return std::pow(eval(*node.lhs, x, nu), eval(*node.rhs, x, nu));
    case Kind::kExp: return std::exp(eval(*node.lhs, x, nu));
    case Kind::kLog: return std::log(eval(*node.lhs, x, nu));
    case Kind::kAbs: return std::abs(eval(*node.lhs, x, nu));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text, int dimension) {
  if (dimension < 1) throw InvalidArgument("expression dimension must be >= 1");
  Parser parser(text, dimension);
  Expression e;
  e.root_ = parser.parse_all();
  e.text_ = std::string(text);
  e.dimension_ = dimension;
  e.uses_x_ = parser.uses_x();
  return e;
}

double Expression::evaluate(std::span<const double> x, const MultiIndex& nu) const {
  if (nu.dimension() != dimension_) throw InvalidArgument("multi-index dimension mismatch");
  if (uses_x_ && static_cast<int>(x.size()) != dimension_) {
    throw InvalidArgument("point dimension mismatch");
  }
  return eval(*root_, x, nu);
}

}  // namespace hermnuc
