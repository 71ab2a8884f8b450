// logdamp: experiment runner.
//
//   logdamp --command decay-fit --n 2 --theta 0.2 --out results/
//   logdamp --config scenario.cfg --seed 7
//
// Exit status: 0 all assertions pass, 1 an assertion failed, 2 configuration
// error, 3 computation error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logdamp/cli/config.hpp"
#include "logdamp/cli/runner.hpp"
#include "logdamp/errors.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kComputeError = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace logdamp;

  CLI::App app{"Numerical experiments for u_tt - Laplace u + log(I + (-Laplace)^theta) u_t = 0"};
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;
  app.add_option("--config", config_path, "key = value configuration file");
  for (const char* key : {"command", "n", "theta", "t-min", "t-max", "points-per-decade", "out",
                          "seed", "rel-tol", "abs-tol"}) {
    app.add_option(std::string("--") + key, flags[key]);
  }
  app.add_option("--set", sets, "extra key=value override (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  cli::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      for (const auto& [key, value] : cli::read_settings(config_path)) {
        cli::apply_setting(cfg, key, value);
      }
    }
    for (const auto& [key, value] : flags) {
      if (app.count("--" + key) > 0) cli::apply_setting(cfg, key, value);
    }
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      cli::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cli::validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const cli::RunResult result = cli::run(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    cli::write_outputs(result, cfg.out, elapsed.count());

    for (const cli::Assertion& a : result.assertions) {
      char measured[32] = "n/a";
      if (a.measured) std::snprintf(measured, sizeof measured, "%.6g", *a.measured);
      std::printf("%s  %s: measured %s, predicted %.6g (%s, tol %.3g)\n", a.passed ? "pass" : "FAIL",
                  a.name.c_str(), measured, a.predicted, cli::to_string(a.relation), a.tolerance);
    }
    std::printf("%s: %zu files and report.json written to %s\n", cli::to_string(cfg.command),
                result.files.size(), cfg.out.string().c_str());
    return result.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "compute error: " << e.what() << "\n";
    return kComputeError;
  }
}
