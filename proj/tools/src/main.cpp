#include <CLI11.hpp>

#include <iostream>

#include "ordet/error.hpp"
#include "ordet_tools/config.hpp"
#include "ordet_tools/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kConfigError = 2;
constexpr int kNumericFailure = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace ordet::tools;

  CLI::App app{"One-bit distributed detection experiments"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned workers = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an experiment config, writing CSV tables and a manifest");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("-w,--workers", workers, "Monte Carlo worker threads (0 = all cores)");
  run->add_flag("-q,--quiet", quiet, "No progress output");

  std::string scenario_id;
  auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios and their defaults");
  list->add_option("id", scenario_id, "Show a single scenario");

  std::string validate_path;
  auto* check = app.add_subcommand("validate", "Check a config and print the resolved parameters");
  check->add_option("config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*list) {
      if (scenario_id.empty()) {
        std::cout << describe_scenarios();
      } else {
        std::cout << describe_scenario(find_scenario(scenario_id));
      }
      return kOk;
    }
    if (*check) {
      const ExperimentConfig cfg = load_config(validate_path);
      validate(cfg);
      std::cout << to_ini(cfg) << "# resolved method: " << to_string(resolved_method(cfg)) << "\n";
      return kOk;
    }
    const ExperimentConfig cfg = load_config(config_path);
    RunOptions options;
    options.workers = workers;
    options.log = quiet ? nullptr : &std::cerr;
    const RunResult result = run_experiment(cfg, options);
    for (const auto& f : result.files) std::cout << f << "\n";
    std::cout << result.manifest << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ordet::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const ordet::BracketError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const ordet::Error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
