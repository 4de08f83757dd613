#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using namespace gz;
using namespace gz::cli;

int main(int argc, char** argv) {
  CLI::App app{"Zak-transform tools for Gabor systems on rational lattices"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite;
  long long seed = -1;
  double tol = -1;
  int cases = -1;

  using Handler = int (*)(const ExperimentConfig&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"zak", "Zak transform grid and identity deviations", cmd_zak},
      {"analyze", "reduce, transform, Riesz bounds, invariance, VMO profile", cmd_analyze},
      {"riesz", "Riesz bounds from the Zak matrix", cmd_riesz},
      {"invariance", "extra time-frequency shift invariance solve", cmd_invariance},
      {"vmo", "small-cube oscillation profile of the Zak transform", cmd_vmo},
      {"metaplectic", "SL(2,Q) factorization, covariance and Zak formulas", cmd_metaplectic},
      {"uncertainty", "moment, Gagliardo and Feichtinger sweeps", cmd_uncertainty},
      {"proptest", "randomized property suites", cmd_proptest},
      {"demo", "box and Gaussian pipelines", cmd_demo},
  };
  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "flat JSON config")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    if (name == "proptest") {
      sub->add_option("suite", suite, "suite name");
      sub->add_option("--cases", cases, "cases per property")->check(CLI::PositiveNumber);
    }
    handlers[sub] = fn;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    json raw = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      try {
        in >> raw;
      } catch (const json::parse_error& e) {
        throw ValidationError("config file " + config_path + " is not valid JSON: " + e.what());
      }
    }
    if (!out_dir.empty()) raw["out"] = out_dir;
    if (seed >= 0) raw["seed"] = seed;
    if (tol > 0) raw["tol"] = tol;
    if (!suite.empty()) raw["suite"] = suite;
    if (cases > 0) raw["cases"] = cases;
    const ExperimentConfig cfg = load_config(raw);
    for (const auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn(cfg, std::cout);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
