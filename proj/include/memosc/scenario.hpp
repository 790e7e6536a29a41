#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "memosc/classical.hpp"
#include "memosc/core.hpp"
#include "memosc/quantum.hpp"

namespace memosc::cli {

using json = nlohmann::ordered_json;

/// Bad config or usage (exit code 2). Numeric-domain failures are DomainError (exit code 3).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2, kDomainError = 3 };

const std::vector<std::string>& scenario_names();

struct ScenarioConfig {
  std::string scenario = "classical-trajectory";
  std::string name;  ///< output file stem; defaults to the scenario name
  ModelKind model = ModelKind::NonlocalNew;
  quantum::KernelVariant kernel = quantum::KernelVariant::New;
  OscillatorParams params;
  std::optional<double> t_end;  ///< scenario-specific default when absent
  std::size_t steps = 100;
  std::optional<double> t1;  ///< defaults to t0 + 1
  std::optional<double> t2;  ///< defaults to t0 + 2
  PhaseState state{1.0, 0.0};
  double packet_center = 0.0;
  double packet_momentum = 1.0;
  double packet_sigma = 1.0;
  classical::MassRestart restart = classical::MassRestart::Physical;
  std::string out_dir = ".";
};

ScenarioConfig config_from_json(const json& doc);
json to_json(const ScenarioConfig& cfg);

/// Applies `key=value` to a config document. Keys are dotted paths
/// (params.gamma, time.t_end, ...); bare parameter names are accepted as aliases.
void apply_override(json& doc, const std::string& assignment);
/// Dotted path an alias resolves to.
std::string resolve_key(const std::string& key);

/// Numeric series with a mandatory header, written with 17 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  [[nodiscard]] std::string str() const;
};

std::string format_number(double v);

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation = "<=";  ///< "<=" passes when value <= tolerance, ">" when value > tolerance
  bool passed = false;
};

Check make_check(std::string name, double value, double tolerance, std::string relation = "<=");

struct ResultRecord {
  std::string scenario;
  std::string name;
  json config;   ///< fully resolved, defaults included
  json outputs = json::object();
  std::vector<Check> checks;
  CsvTable series;
  bool passed = true;
  std::string error;  ///< non-empty when the run failed
  int exit_code = kSuccess;

  [[nodiscard]] json to_json() const;
};

ResultRecord run_scenario(const ScenarioConfig& config);

/// Writes <out>/<name>.csv and <out>/<name>.json.
void write_outputs(const ResultRecord& record, const std::string& out_dir);

/// Parses "lo:hi:step" (inclusive) or a comma-separated list.
std::vector<double> parse_values(const std::string& spec);

/// One run per value; a failing value is recorded with its error and the sweep continues.
std::vector<ResultRecord> run_sweep(const ScenarioConfig& base, const std::string& axis,
                                    const std::vector<double>& values);

struct VerificationSummary {
  std::vector<Check> checks;
  std::vector<std::string> errors;  ///< parallel to checks; empty when the check ran
  bool passed = true;

  [[nodiscard]] json to_json() const;
};

/// Executes every module invariant; failures are data.
VerificationSummary run_verification_suite();

}  // namespace memosc::cli
