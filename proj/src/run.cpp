#include "hermnuc/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "hermnuc/conditions.hpp"
#include "hermnuc/errors.hpp"
#include "hermnuc/expression.hpp"
#include "hermnuc/nuclearity.hpp"
#include "hermnuc/operator.hpp"
#include "hermnuc/trace.hpp"
#include "hermnuc/transform.hpp"

namespace hermnuc {

namespace {

nlohmann::json coefficients_json(const CoefficientVector& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < c.size(); ++a) {
    rows.push_back({{"nu", c.basis()[a].entries()}, {"value", c.at(a)}});
  }
  return rows;
}

nlohmann::json decomposition_summary(const NuclearDecomposition& d) {
  auto exponent = [](double p) -> nlohmann::json {
    if (std::isinf(p)) return "inf";
    return p;
  };
  return {{"rank", d.rank()},
          {"p1", exponent(d.p1)},
          {"p2", exponent(d.p2)},
          {"r", d.r},
          {"tol", d.tol},
          {"quasi_norm_bound", d.quasi_norm_bound},
          {"reconstruction_error", d.reconstruction_error},
          {"kernel_max", d.kernel_max},
          {"singular_values",
           std::vector<double>(d.singular_values.data(),
                               d.singular_values.data() + d.singular_values.size())}};
}

Function parse_function(const ExperimentConfig& c) {
  auto expr = Expression::parse(c.function, c.n);
  const auto zero = MultiIndex::zero(c.n);
  return [expr, zero](std::span<const double> x) { return expr.evaluate(x, zero); };
}

std::vector<double> sample(const Function& f, const QuadratureGrid& grid) {
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = f(grid.point(i));
  return s;
}

nlohmann::json kappa_json(const Symbol& symbol, const ExperimentConfig& c) {
  const RegimePartition part(c.n, c.k);
  auto report = kappa(symbol, c.p1, c.p2, c.r, part, c.Nmax);
  auto j = report.to_json();
  j["symbol"] = symbol.describe();
  return j;
}

nlohmann::json verify_json(const Symbol& symbol, const NuclearDecomposition& d,
                           const ExperimentConfig& c, const QuadratureGrid& grid) {
  const auto check = verify_symbol_decomposition(symbol, d, c.N);
  nlohmann::json j = {{"forward",
                       {{"max_residual", check.max_residual},
                        {"worst_nu", check.worst_index.entries()},
                        {"worst_node", check.worst_node},
                        {"checked", check.checked}}}};

  // Reverse direction on random functions in the truncated span.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  auto basis = std::make_shared<const IndexSet>(c.n, c.N);
  double worst = 0.0;
  constexpr int kTrials = 20;
  for (int t = 0; t < kTrials; ++t) {
    std::vector<double> values(basis->size());
    for (auto& v : values) v = coef(rng);
    const CoefficientVector f(basis, values);
    const auto samples = inverse_transform_on_grid(f, grid);
    const auto direct = apply_on_grid(symbol, samples, c.N, grid);
    const auto rebuilt = synthesize(d, samples);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      worst = std::max(worst, std::abs(direct[i] - rebuilt[i]));
    }
  }
  j["reverse"] = {{"max_difference", worst}, {"trials", kTrials}};

  if (symbol.is_multiplier()) {
    double err = 0.0;
    for (const auto& nu : *basis) {
      err = std::max(err, std::abs(recover_multiplier_symbol(d, nu) - symbol(nu)));
    }
    j["recovered_symbol_max_error"] = err;
  }
  return j;
}

nlohmann::json execute_command(const ExperimentConfig& c) {
  const QuadratureGrid grid(c.n, c.Q);
  const std::string& cmd = c.command;

  if (cmd == "transform") {
    const auto f = parse_function(c);
    const auto coeffs = forward_transform(f, c.N, grid);
    double energy = 0.0;
    for (double v : coeffs.values()) energy += v * v;
    const auto s = sample(f, grid);
    std::vector<double> sq(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
    return {{"coefficients", coefficients_json(coeffs)},
            {"coefficient_energy", energy},
            {"l2_norm_squared", integrate_samples(grid, sq)}};
  }

  const Symbol symbol = parse_symbol_spec(c.symbol, c.n);

  if (cmd == "apply") {
    const auto f = parse_function(c);
    const auto values = apply_on_grid(symbol, sample(f, grid), c.N, grid);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto x = grid.point(i);
      rows.push_back({{"x", std::vector<double>(x.begin(), x.end())}, {"value", values[i]}});
    }
    return {{"symbol", symbol.describe()}, {"values", rows}};
  }
  if (cmd == "kernel") {
    const auto kernel = assemble_kernel(symbol, c.N, grid);
    if (!c.out.empty()) {
      std::filesystem::create_directories(c.out);
      std::ofstream csv(std::filesystem::path(c.out) / "kernel.csv");
      if (!csv) throw MissingFile("cannot write kernel.csv in " + c.out);
      kernel.write_csv(csv);
    }
    return {{"symbol", symbol.describe()},
            {"rows", kernel.entries.rows()},
            {"max_abs", kernel.entries.cwiseAbs().maxCoeff()},
            {"symmetric", kernel.is_symmetric(1e-10)}};
  }
  if (cmd == "decompose") {
    const auto d = decompose_kernel(assemble_kernel(symbol, c.N, grid), c.p1, c.p2, c.r, c.tol);
    if (!c.out.empty()) save_decomposition(d, c.out);
    auto j = decomposition_summary(d);
    j["symbol"] = symbol.describe();
    return j;
  }
  if (cmd == "verify") {
    const auto d = decompose_kernel(assemble_kernel(symbol, c.N, grid), c.p1, c.p2, c.r, c.tol);
    auto j = verify_json(symbol, d, c, grid);
    j["decomposition"] = decomposition_summary(d);
    j["symbol"] = symbol.describe();
    return j;
  }
  if (cmd == "kappa") {
    auto j = kappa_json(symbol, c);
    j["regime_table"] = regime_table();
    return j;
  }
  if (cmd == "trace") {
    return spectral_trace(symbol, c.N, grid, TraceOptions{.p = c.p1, .tol = c.tol}).to_json();
  }
  if (cmd == "report-all") {
    nlohmann::json j;
    j["trace"] = spectral_trace(symbol, c.N, grid, TraceOptions{.p = c.p1, .tol = c.tol}).to_json();
    if (symbol.is_multiplier()) {
      j["kappa"] = kappa_json(symbol, c);
    } else {
      j["kappa"] = {{"skipped", "kappa sums are defined for multiplier symbols only"}};
    }
    const auto d = decompose_kernel(assemble_kernel(symbol, c.N, grid), c.p1, c.p2, c.r, c.tol);
    j["decomposition"] = decomposition_summary(d);
    j["verification"] = verify_json(symbol, d, c, grid);
    return j;
  }
  throw RangeError("unknown command '" + cmd + "'");
}

}  // namespace

nlohmann::json execute(const ExperimentConfig& config) {
  config.validate();
  const auto resolved = config.resolved();
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json report;
  report["command"] = resolved.command;
  report["config"] = resolved.to_json();
  report["version"] = kVersion;
  report["result"] = execute_command(resolved);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report["timing"] = {{"elapsed_seconds", elapsed.count()}};
  return report;
}

int describe_current_exception(nlohmann::json& error) {
  int code = kExitInternal;
  std::string kind = "internal";
  std::string message;
  try {
    throw;
  } catch (const ParseError& e) {
    code = kExitParse;
    kind = "parse";
    message = e.what();
    error["line"] = e.line();
    error["column"] = e.column();
  } catch (const RangeError& e) {
    code = kExitRange;
    kind = "range";
    message = e.what();
  } catch (const MissingFile& e) {
    code = kExitMissingFile;
    kind = "missing-file";
    message = e.what();
  } catch (const NumericalError& e) {
    code = kExitNumerical;
    kind = "numerical";
    message = e.what();
  } catch (const EvaluationError& e) {
    code = kExitEvaluation;
    kind = "evaluation";
    message = e.what();
  } catch (const UnsupportedExponent& e) {
    code = kExitUnsupportedExponent;
    kind = "unsupported-exponent";
    message = e.what();
  } catch (const InvalidArgument& e) {
    code = kExitRange;
    kind = "invalid-argument";
    message = e.what();
  } catch (const std::exception& e) {
    message = e.what();
  } catch (...) {
    message = "unknown error";
  }
  error["kind"] = kind;
  error["message"] = message;
  error["exit_code"] = code;
  return code;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto report = execute(config);
    const std::string text = report.dump(2) + "\n";
    if (config.out.empty()) {
      out << text;
    } else {
      std::filesystem::path target(config.out);
      if (config.command == "kernel" || config.command == "decompose") {
        std::filesystem::create_directories(target);
        target /= "report.json";
      } else if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
      }
      std::ofstream file(target);
      if (!file) throw MissingFile("cannot write report to " + target.string());
      file << text;
    }
    return kExitOk;
  } catch (...) {
    nlohmann::json error;
    const int code = describe_current_exception(error);
    err << nlohmann::json{{"error", error}}.dump() << '\n';
    return code;
  }
}

}  // namespace hermnuc
