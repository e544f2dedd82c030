#include "hermnuc/symbol.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "hermnuc/errors.hpp"
#include "hermnuc/hermite.hpp"
#include "hermnuc/quadrature.hpp"

namespace hermnuc {

namespace {

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ParseError("invalid number '" + text + "' for " + what, 1, 1);
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Symbol::Symbol(int dimension, SymbolKind kind, Evaluator evaluator, std::string family,
               Parameters parameters)
    : dimension_(dimension),
      kind_(kind),
      evaluator_(std::move(evaluator)),
      family_(std::move(family)),
      parameters_(std::move(parameters)) {
  if (dimension < 1) throw InvalidArgument("symbol dimension must be >= 1");
  if (!evaluator_) throw InvalidArgument("symbol needs an evaluator");
}

std::string Symbol::describe() const {
  std::string out = family_;
  char sep = ':';
  for (const auto& [k, v] : parameters_) {
    out += sep + k + "=" + v;
    sep = ',';
  }
  return out;
}

double Symbol::operator()(const MultiIndex& nu) const {
  if (!is_multiplier()) throw InvalidArgument("symbol " + describe() + " depends on x");
  static thread_local std::vector<double> origin;
  origin.assign(static_cast<std::size_t>(dimension_), 0.0);
  return evaluator_(origin, nu);
}

Symbol heat_symbol(int dimension, double t) {
  return Symbol(
      dimension, SymbolKind::kMultiplier,
      [t](std::span<const double>, const MultiIndex& nu) { return std::exp(-t * eigenvalue(nu)); },
      "heat", {{"t", format_number(t)}});
}

Symbol power_symbol(int dimension, double a) {
  return Symbol(
      dimension, SymbolKind::kMultiplier,
      [a](std::span<const double>, const MultiIndex& nu) {
        return std::pow(1.0 + nu.degree(), -a);
      },
      "power", {{"a", format_number(a)}});
}

Symbol delta_symbol(const MultiIndex& nu0) {
  std::string where;
  for (int j = 0; j < nu0.dimension(); ++j) where += (j ? "," : "") + std::to_string(nu0[j]);
  return Symbol(
      nu0.dimension(), SymbolKind::kMultiplier,
      [nu0](std::span<const double>, const MultiIndex& nu) { return nu == nu0 ? 1.0 : 0.0; },
      "delta", {{"nu0", where}});
}

Symbol constant_symbol(int dimension, double c) {
  return Symbol(
      dimension, SymbolKind::kMultiplier,
      [c](std::span<const double>, const MultiIndex&) { return c; }, "const",
      {{"c", format_number(c)}});
}

Symbol expression_symbol(std::string_view text, int dimension) {
  auto expr = Expression::parse(text, dimension);
  const auto kind = expr.depends_on_x() ? SymbolKind::kPseudo : SymbolKind::kMultiplier;
  return Symbol(
      dimension, kind,
      [expr](std::span<const double> x, const MultiIndex& nu) { return expr.evaluate(x, nu); },
      "expr", {{"text", std::string(text)}});
}

Symbol linear_combination(double alpha, const Symbol& m1, double beta, const Symbol& m2) {
  if (m1.dimension() != m2.dimension()) throw InvalidArgument("symbol dimensions differ");
  const auto kind = m1.is_multiplier() && m2.is_multiplier() ? SymbolKind::kMultiplier
                                                             : SymbolKind::kPseudo;
  return Symbol(
      m1.dimension(), kind,
      [=](std::span<const double> x, const MultiIndex& nu) {
        return alpha * m1(x, nu) + beta * m2(x, nu);
      },
      "combination",
      {{"alpha", format_number(alpha)},
       {"beta", format_number(beta)},
       {"m1", m1.describe()},
       {"m2", m2.describe()}});
}

Symbol table_symbol(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open symbol table '" + path + "'");

  const auto n = static_cast<std::size_t>(dimension);
  std::unordered_map<MultiIndex, double, MultiIndexHash> multiplier_entries;
  std::map<std::pair<std::size_t, MultiIndex>, double> pseudo_entries;
  std::shared_ptr<const QuadratureGrid> grid;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text[0] == '#') {
      std::istringstream header(text.substr(1));
      std::string word;
      header >> word;
      if (word != "grid") continue;
      int hn = 0;
      int hq = 0;
      while (header >> word) {
        if (word.rfind("n=", 0) == 0) hn = static_cast<int>(parse_number(word.substr(2), "n"));
        if (word.rfind("Q=", 0) == 0) hq = static_cast<int>(parse_number(word.substr(2), "Q"));
      }
      if (hn != dimension) {
        throw ParseError("table grid dimension " + std::to_string(hn) +
                             " does not match n = " + std::to_string(dimension),
                         line_no, 1);
      }
      grid = std::make_shared<const QuadratureGrid>(hn, hq);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(text[0]))) continue;  // column names
    const auto cells = split(text, ',');
    const std::size_t expected = n + 1 + (grid ? 1 : 0);
    if (cells.size() != expected) {
      throw ParseError("expected " + std::to_string(expected) + " columns, got " +
                           std::to_string(cells.size()),
                       line_no, 1);
    }
    std::vector<double> numbers;
    try {
      for (const auto& c : cells) numbers.push_back(parse_number(trim(c), "table cell"));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, 1);
    }
    std::size_t offset = 0;
    std::size_t x_index = 0;
    if (grid) {
      x_index = static_cast<std::size_t>(numbers[0]);
      if (numbers[0] < 0 || x_index >= grid->size()) {
        throw ParseError("x-index out of range for the declared grid", line_no, 1);
      }
      offset = 1;
    }
    std::vector<int> entries(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = numbers[offset + j];
      if (v < 0 || v != std::floor(v)) throw ParseError("multi-index entry must be a non-negative integer", line_no, 1);
      entries[j] = static_cast<int>(v);
    }
    const double value = numbers.back();
    if (grid) {
      pseudo_entries[{x_index, MultiIndex(entries)}] = value;
    } else {
      multiplier_entries[MultiIndex(entries)] = value;
    }
  }

  if (!grid) {
    auto table = std::make_shared<const decltype(multiplier_entries)>(std::move(multiplier_entries));
    return Symbol(
        dimension, SymbolKind::kMultiplier,
        [table](std::span<const double>, const MultiIndex& nu) {
          auto it = table->find(nu);
          return it == table->end() ? 0.0 : it->second;
        },
        "table", {{"path", path}});
  }

  auto table = std::make_shared<const decltype(pseudo_entries)>(std::move(pseudo_entries));
  return Symbol(
      dimension, SymbolKind::kPseudo,
      [table, grid](std::span<const double> x, const MultiIndex& nu) {
        // Locate x among the declared grid points.
        std::size_t index = 0;
        const auto& nodes = grid->axis_nodes();
        for (std::size_t j = 0; j < x.size(); ++j) {
          std::size_t best = 0;
          for (std::size_t q = 1; q < nodes.size(); ++q) {
            if (std::abs(nodes[q] - x[j]) < std::abs(nodes[best] - x[j])) best = q;
          }
          if (std::abs(nodes[best] - x[j]) > 1e-9 * std::max(1.0, std::abs(x[j]))) {
            throw EvaluationError("pseudo symbol table evaluated off its declared grid");
          }
          index = index * nodes.size() + best;
        }
        auto it = table->find({index, nu});
        return it == table->end() ? 0.0 : it->second;
      },
      "table", {{"path", path}, {"Q", std::to_string(grid->nodes_per_axis())}});
}

Symbol parse_symbol_spec(const std::string& spec, int dimension) {
  const auto colon = spec.find(':');
  const std::string family = trim(spec.substr(0, colon));
  const std::string rest = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  auto keyed = [&](const std::string& key) {
    for (const auto& item : split(rest, ',')) {
      const auto eq = item.find('=');
      if (eq != std::string::npos && trim(item.substr(0, eq)) == key) {
        return parse_number(trim(item.substr(eq + 1)), family + " parameter " + key);
      }
    }
    throw ParseError("symbol '" + family + "' requires parameter " + key, 1,
                     family.size() + 2);
  };

  if (family == "heat") return heat_symbol(dimension, keyed("t"));
  if (family == "power") return power_symbol(dimension, keyed("a"));
  if (family == "const") return constant_symbol(dimension, keyed("c"));
  if (family == "delta") {
    std::vector<int> entries;
    for (const auto& item : split(rest, ',')) {
      const double v = parse_number(trim(item), "delta index");
      if (v < 0 || v != std::floor(v)) throw ParseError("delta index must be a non-negative integer", 1, family.size() + 2);
      entries.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(entries.size()) != dimension) {
      throw InvalidArgument("delta index has " + std::to_string(entries.size()) +
                            " entries, expected " + std::to_string(dimension));
    }
    return delta_symbol(MultiIndex(entries));
  }
  if (family == "table") return table_symbol(trim(rest), dimension);
  if (family == "expr") {
    try {
      return expression_symbol(rest, dimension);
    } catch (const ParseError& e) {
      // shift the column past the "expr:" prefix
      throw ParseError("in symbol expression: " + e.message(), e.line(),
                       e.column() + (e.line() == 1 ? colon + 1 : 0));
    }
  }
  throw ParseError("unknown symbol family '" + family + "'", 1, 1);
}

}  // namespace hermnuc
