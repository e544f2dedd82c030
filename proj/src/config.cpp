#include "hermnuc/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hermnuc/errors.hpp"

namespace hermnuc {

namespace {

const std::array<const char*, 8> kCommands = {"transform", "apply",  "kernel", "decompose",
                                              "verify",    "kappa",  "trace",  "report-all"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ParseError("invalid number '" + value + "' for " + key, 1, 1);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ParseError("invalid integer '" + value + "' for " + key, 1, 1);
  }
  return static_cast<int>(v);
}

nlohmann::json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

}  // namespace

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  return parse_double("exponent", text);
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "command") {
    command = value;
  } else if (key == "symbol") {
    symbol = value;
  } else if (key == "function") {
    function = value;
  } else if (key == "n") {
    n = parse_int(key, value);
  } else if (key == "N") {
    N = parse_int(key, value);
  } else if (key == "Q") {
    Q = parse_int(key, value);
  } else if (key == "p1") {
    p1 = parse_exponent(value);
  } else if (key == "p2") {
    p2 = parse_exponent(value);
  } else if (key == "r") {
    r = parse_double(key, value);
  } else if (key == "k") {
    k = parse_int(key, value);
  } else if (key == "tol") {
    tol = parse_double(key, value);
  } else if (key == "Nmax") {
    Nmax = parse_int(key, value);
  } else if (key == "out") {
    out = value;
  } else if (key == "seed") {
    std::size_t used = 0;
    try {
      seed = std::stoull(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw ParseError("invalid seed '" + value + "'", 1, 1);
  } else {
    throw ParseError("unknown config key '" + key + "'", 1, 1);
  }
}

void ExperimentConfig::validate() const {
  bool known = false;
  for (const char* c : kCommands) known = known || command == c;
  if (!known) throw RangeError("unknown command '" + command + "'");
  if (n < 1 || n > 6) throw RangeError("n must lie in [1, 6]");
  if (N < 0 || N > 200) throw RangeError("N must lie in [0, 200]");
  if (Q != 0 && (Q < 1 || Q > 512)) throw RangeError("Q must lie in [1, 512] (0 = N + 8)");
  if (std::isnan(p1) || p1 < 1.0) throw RangeError("p1 must lie in [1, inf]");
  if (std::isnan(p2) || p2 < 1.0) throw RangeError("p2 must lie in [1, inf]");
  if (!(r > 0.0 && r <= 1.0)) throw RangeError("r must lie in (0, 1]");
  if (k < 1) throw RangeError("k must be >= 1");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw RangeError("tol must be a positive number");
  if (Nmax < 0 || Nmax > 10000) throw RangeError("Nmax must lie in [0, 10000]");

  const int q = Q == 0 ? N + 8 : Q;
  if (q > 512) throw RangeError("resolved Q = N + 8 exceeds 512");
  double points = std::pow(static_cast<double>(q), n);
  const bool dense = command == "kernel" || command == "decompose" || command == "verify" ||
                     command == "trace" || command == "report-all";
  const double limit = dense ? 4096.0 : 1e6;
  if (points > limit) {
    throw RangeError("grid of Q^n = " + format_double(points) + " points exceeds the limit " +
                     format_double(limit) + " for command '" + command + "'");
  }
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  if (c.Q == 0) c.Q = c.N + 8;
  return c;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream text;
  text << "command = " << command << '\n'
      << "symbol = " << symbol << '\n'
      << "function = " << function << '\n'
      << "n = " << n << '\n'
      << "N = " << N << '\n'
      << "Q = " << Q << '\n'
      << "p1 = " << format_double(p1) << '\n'
      << "p2 = " << format_double(p2) << '\n'
      << "r = " << format_double(r) << '\n'
      << "k = " << k << '\n'
      << "tol = " << format_double(tol) << '\n'
      << "Nmax = " << Nmax << '\n'
      << "out = " << out << '\n'
      << "seed = " << seed << '\n';
  return text.str();
}

ExperimentConfig ExperimentConfig::from_text(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    const std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto value_start = raw.find_first_not_of(" \t", raw.find('=') + 1);
    const std::size_t value_column = (value_start == std::string_view::npos ? raw.size() : value_start) + 1;
    try {
      config.set(key, value);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, key.empty() ? 1 : value_column);
    }
    if (end == text.size()) break;
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"command", command}, {"symbol", symbol}, {"function", function}, {"n", n},
          {"N", N},             {"Q", Q},           {"p1", exponent_json(p1)},
          {"p2", exponent_json(p2)}, {"r", r},      {"k", k},   {"tol", tol},
          {"Nmax", Nmax},       {"out", out},       {"seed", seed}};
}

}  // namespace hermnuc
