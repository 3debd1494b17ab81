#ifndef NVWGM_CONFIG_HPP
#define NVWGM_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvwgm/scenarios.hpp"

namespace nvwgm::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, summary, both };

// Flat key-value run description. Every physical quantity carries its unit
// in the key name (_MHz_over_2pi, _ns, ...); unknown keys are rejected.
struct RunConfig {
  std::string scenario;
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::both;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
};

// Named parameter sets reproducing the three benchmark experiments.
const std::map<std::string, std::string>& preset(const std::string& name);
std::vector<std::string> preset_names();
// The scenario a preset is written for (its "scenario" entry).
std::string preset_scenario(const std::string& name);

// Layered resolution: defaults < preset < config file < --set overrides.
// `scenario` comes from the subcommand; a conflicting scenario key in the
// file or preset arguments is an error (presets merely pre-fill values).
RunConfig make_config(const std::string& scenario, const std::optional<std::string>& preset_name,
                      const std::optional<std::filesystem::path>& config_file,
                      const std::vector<std::string>& overrides);

// Key schema check; throws ConfigError with a suggestion when the key looks
// like a known one with the unit suffix missing.
void validate_entry(const std::string& key, const std::string& value);

// Parse "key = value" lines (# comments); diagnostics carry line numbers.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

// Scenario option builders from a resolved config.
scenarios::WStateOptions w_state_options(const RunConfig& config);
scenarios::FullVsEffOptions full_vs_eff_options(const RunConfig& config);
scenarios::BellOptions bell_options(const RunConfig& config);
scenarios::QitOptions qit_options(const RunConfig& config);
scenarios::SweepOptions sweep_options(const RunConfig& config);

// The `params` subcommand: derived-quantity chains as a report.
scenarios::ScenarioReport run_params(const RunConfig& config);

std::vector<double> parse_value_list(const std::string& text);

}  // namespace nvwgm::cli

#endif  // NVWGM_CONFIG_HPP
