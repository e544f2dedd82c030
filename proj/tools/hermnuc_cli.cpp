#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermnuc/conditions.hpp"
#include "hermnuc/config.hpp"
#include "hermnuc/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hermite pseudo-multipliers: nuclearity, kappa sums and traces"};
  app.set_version_flag("--version", hermnuc::kVersion);

  std::string command;
  std::string config_path;
  app.add_option("command", command,
                 "transform | apply | kernel | decompose | verify | kappa | trace | report-all");
  app.add_option("--config", config_path, "flat key = value config file (flags override it)");

  // Flags are kept as text and applied through ExperimentConfig::set so the
  // file and the command line share one parser.
  const std::pair<const char*, const char*> options[] = {
      {"symbol", "heat:t=, power:a=, const:c=, delta:i1,..,in, table:<path>, expr:<text>"},
      {"function", "input f(x1..xn) for transform / apply"},
      {"n", "dimension, 1..6"},
      {"N", "degree cutoff |nu| <= N"},
      {"Q", "Gauss-Hermite nodes per axis (0 = N + 8)"},
      {"p1", "source exponent (accepts inf)"},
      {"p2", "target exponent (accepts inf)"},
      {"r", "nuclearity order in (0, 1]"},
      {"k", "partition cutoff for kappa"},
      {"tol", "relative singular-value cutoff"},
      {"Nmax", "largest degree shell summed by kappa"},
      {"out", "report file (directory for kernel / decompose)"},
      {"seed", "seed for randomized checks"},
  };
  std::vector<const char*> keys;
  std::map<std::string, std::string> flags;
  for (const auto& [key, help] : options) {
    keys.push_back(key);
    app.add_option(std::string("--") + key, flags[key], help);
  }
  bool show_regimes = false;
  app.add_flag("--regimes", show_regimes, "print the nine kappa regimes and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error",
                                 {{"kind", "parse"},
                                  {"message", e.what()},
                                  {"exit_code", hermnuc::kExitParse}}}}
                     .dump()
              << '\n';
    return hermnuc::kExitParse;
  }

  if (show_regimes) {
    for (const auto& row : hermnuc::regime_table()) std::cout << row << '\n';
    return hermnuc::kExitOk;
  }

  hermnuc::ExperimentConfig config;
  try {
    if (!config_path.empty()) config = hermnuc::ExperimentConfig::from_file(config_path);
    if (!command.empty()) config.command = command;
    for (const char* key : keys) {
      if (app.get_option(std::string("--") + key)->count() > 0) config.set(key, flags[key]);
    }
  } catch (...) {
    nlohmann::json error;
    const int code = hermnuc::describe_current_exception(error);
    std::cerr << nlohmann::json{{"error", error}}.dump() << '\n';
    return code;
  }
  return hermnuc::run(config, std::cout, std::cerr);
}
