#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memosc/scenario.hpp"

using namespace memosc;
using cli::json;

namespace {

json load_config(const std::string& path, const std::vector<std::string>& sets) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw cli::ConfigError("cannot open config '" + path + "'");
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw cli::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
  }
  for (const auto& s : sets) cli::apply_override(doc, s);
  return doc;
}

int run_one(const std::string& scenario, const std::string& config, const std::vector<std::string>& sets,
            const std::string& out) {
  json doc = load_config(config, sets);
  if (doc.contains("scenario") && doc["scenario"] != scenario)
    throw cli::ConfigError("config names scenario '" + doc["scenario"].get<std::string>() + "' but '" + scenario +
                           "' was requested");
  doc["scenario"] = scenario;
  auto cfg = cli::config_from_json(doc);
  if (!out.empty()) cfg.out_dir = out;
  const auto rec = cli::run_scenario(cfg);
  cli::write_outputs(rec, cfg.out_dir);
  std::cout << rec.to_json().dump(2) << '\n';
  return rec.exit_code;
}

int run_sweep(const std::string& scenario, const std::string& config, const std::vector<std::string>& sets,
              const std::string& out, const std::string& axis, const std::string& values) {
  json doc = load_config(config, sets);
  if (!scenario.empty()) doc["scenario"] = scenario;
  auto cfg = cli::config_from_json(doc);
  if (!out.empty()) cfg.out_dir = out;
  const auto records = cli::run_sweep(cfg, axis, cli::parse_values(values));
  json summary = json::array();
  int code = cli::kSuccess;
  for (const auto& rec : records) {
    cli::write_outputs(rec, cfg.out_dir);
    summary.push_back(rec.to_json());
    if (rec.exit_code != cli::kSuccess && code == cli::kSuccess) code = cli::kVerificationFailure;
  }
  std::cout << summary.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memosc: damped-oscillator propagators, composition defects and numerical cross-checks"};
  app.require_subcommand(1);

  std::string config, out, axis, values, sweep_scenario;
  std::vector<std::string> sets;
  std::string chosen;

  for (const auto& name : cli::scenario_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override: key=value (repeatable)");
    sub->add_option("--out", out, "output directory");
    sub->callback([&chosen, name] { chosen = name; });
  }
  auto* verify = app.add_subcommand("verify", "run every invariant check");
  verify->callback([&chosen] { chosen = "verify"; });

  auto* sweep = app.add_subcommand("sweep", "run a scenario once per value of a parameter");
  sweep->add_option("--axis", axis, "parameter to vary (e.g. gamma, params.omega, time.t2)")->required();
  sweep->add_option("--values", values, "lo:hi:step or a comma-separated list")->required();
  sweep->add_option("--scenario", sweep_scenario, "scenario to sweep (default from config)");
  sweep->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
  sweep->add_option("--set", sets, "override: key=value (repeatable)");
  sweep->add_option("--out", out, "output directory");
  sweep->callback([&chosen] { chosen = "sweep"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kUsageError;
  }

  try {
    if (chosen == "verify") {
      const auto summary = cli::run_verification_suite();
      std::cout << summary.to_json().dump(2) << '\n';
      return summary.passed ? cli::kSuccess : cli::kVerificationFailure;
    }
    if (chosen == "sweep") return run_sweep(sweep_scenario, config, sets, out, axis, values);
    return run_one(chosen, config, sets, out);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kUsageError;
  } catch (const DomainError& e) {  // includes oracle failures
    std::cerr << "domain error: " << e.what() << '\n';
    return cli::kDomainError;
  }
}
