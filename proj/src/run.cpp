#include "nvwgm/run.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "nvwgm/dynamics.hpp"

namespace nvwgm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
using scenarios::ScenarioReport;
using scenarios::Table;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  const long rows = table.rows();
  for (long r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.data.size(); ++c) {
      if (c > 0) out << ',';
      out << fmt17(table.data[c][r]);
    }
    out << '\n';
  }
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

ordered_json report_json(const ScenarioReport& report,
                         const std::vector<std::pair<std::string, std::string>>& table_files) {
  ordered_json j;
  j["scenario"] = report.scenario;
  j["pass"] = report.pass();
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  j["parameters"] = std::move(params);
  ordered_json metrics = ordered_json::object();
  for (const auto& [key, value] : report.metrics) metrics[key] = value;
  j["metrics"] = std::move(metrics);
  ordered_json texts = ordered_json::object();
  for (const auto& [key, value] : report.texts) texts[key] = value;
  j["texts"] = std::move(texts);
  ordered_json checks = ordered_json::array();
  for (const auto& check : report.checks) {
    ordered_json c;
    c["name"] = check.name;
    c["value"] = check.value;
    c["relation"] = check.relation;
    c["threshold"] = check.threshold;
    c["pass"] = check.pass;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  j["notes"] = report.notes;
  ordered_json tables = ordered_json::array();
  for (const auto& [name, file] : table_files) {
    ordered_json t;
    t["name"] = name;
    t["file"] = file;
    t["columns"] = report.table(name).columns;
    tables.push_back(std::move(t));
  }
  j["tables"] = std::move(tables);
  return j;
}

void print_report(std::ostream& out, const ScenarioReport& report, const std::string& heading) {
  out << "== " << heading << "\n";
  for (const std::string& note : report.notes) out << "note: " << note << "\n";
  for (const auto& [key, value] : report.metrics) {
    out << "  " << key << " = " << fmt17(value) << "\n";
  }
  for (const auto& [key, value] : report.texts) {
    out << "  " << key << " = " << value << "\n";
  }
  for (const auto& check : report.checks) {
    out << (check.pass ? "  [PASS] " : "  [FAIL] ") << check.name << " (" << fmt17(check.value)
        << " " << check.relation << " " << fmt17(check.threshold) << ")\n";
  }
}

// Numeric metrics present in every report, in first-report order.
std::vector<std::string> common_metrics(const std::vector<ScenarioReport>& reports) {
  std::vector<std::string> names;
  if (reports.empty()) return names;
  for (const auto& [key, _] : reports.front().metrics) {
    bool everywhere = true;
    for (const ScenarioReport& report : reports) {
      bool found = false;
      for (const auto& [other, __] : report.metrics) {
        if (other == key) {
          found = true;
          break;
        }
      }
      if (!found) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) names.push_back(key);
  }
  return names;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  try {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) {
      throw ConfigError("cannot create output directory '" + config.out_dir.string() +
                        "': " + ec.message());
    }
    const bool want_csv = config.format != OutputFormat::summary;
    const bool want_summary = config.format != OutputFormat::csv;

    ordered_json summary;
    ordered_json config_echo = ordered_json::object();
    config_echo["scenario"] = config.scenario;
    config_echo["out"] = config.out_dir.string();
    config_echo["format"] = config.format == OutputFormat::csv       ? "csv"
                            : config.format == OutputFormat::summary ? "summary"
                                                                     : "both";
    for (const auto& [key, value] : config.values) config_echo[key] = value;

    bool pass = true;

    if (config.scenario == "sweep") {
      const scenarios::SweepOptions options = sweep_options(config);
      const std::vector<ScenarioReport> reports = scenarios::sweep(options);
      ordered_json runs = ordered_json::array();
      for (std::size_t k = 0; k < reports.size(); ++k) {
        const ScenarioReport& report = reports[k];
        char index[8];
        std::snprintf(index, sizeof(index), "%02zu", k);
        std::vector<std::pair<std::string, std::string>> files;
        for (const Table& table : report.tables) {
          const std::string file =
              options.scenario + "_" + index + "_" + table.name + ".csv";
          if (want_csv) write_csv(config.out_dir / file, table);
          files.emplace_back(table.name, file);
        }
        runs.push_back(report_json(report, files));
        print_report(out, report,
                     options.scenario + "[" + std::string(index) + "] " + options.axis + "=" +
                         fmt17(options.values[k]));
        pass = pass && report.pass();
      }
      if (want_csv && !reports.empty()) {
        Table metrics_table;
        metrics_table.name = "sweep_metrics";
        metrics_table.columns.push_back("sweep_value");
        metrics_table.data.push_back(options.values);
        for (const std::string& name : common_metrics(reports)) {
          std::vector<double> column;
          column.reserve(reports.size());
          for (const ScenarioReport& report : reports) column.push_back(report.metric(name));
          metrics_table.columns.push_back(name);
          metrics_table.data.push_back(std::move(column));
        }
        write_csv(config.out_dir / "sweep_metrics.csv", metrics_table);
      }
      summary["scenario"] = "sweep";
      summary["config"] = std::move(config_echo);
      ordered_json sweep_info;
      sweep_info["scenario"] = options.scenario;
      sweep_info["axis"] = options.axis;
      sweep_info["values"] = options.values;
      summary["sweep"] = std::move(sweep_info);
      summary["runs"] = std::move(runs);
      summary["pass"] = pass;
    } else {
      ScenarioReport report;
      if (config.scenario == "w_state") {
        report = scenarios::run_w_state(w_state_options(config));
      } else if (config.scenario == "full_vs_eff") {
        report = scenarios::run_full_vs_effective(full_vs_eff_options(config));
      } else if (config.scenario == "bell") {
        report = scenarios::run_bell_stirap(bell_options(config));
      } else if (config.scenario == "qit") {
        report = scenarios::run_qit(qit_options(config));
      } else if (config.scenario == "params") {
        report = run_params(config);
      } else {
        throw ConfigError("unknown scenario '" + config.scenario + "'");
      }
      std::vector<std::pair<std::string, std::string>> files;
      for (const Table& table : report.tables) {
        const std::string file = config.scenario + "_" + table.name + ".csv";
        if (want_csv) write_csv(config.out_dir / file, table);
        files.emplace_back(table.name, file);
      }
      print_report(out, report, config.scenario);
      pass = report.pass();
      summary = report_json(report, files);
      summary["config"] = std::move(config_echo);
    }

    if (want_summary) {
      const std::filesystem::path path = config.out_dir / "summary.json";
      std::ofstream json_out(path, std::ios::binary);
      if (!json_out) throw ConfigError("cannot write '" + path.string() + "'");
      json_out << summary.dump(2) << '\n';
    }
    out << (pass ? "PASS" : "FAIL: threshold check failed") << "\n";
    return pass ? kExitPass : kExitThresholdFailure;
  } catch (const IntegrationError& error) {
    out << "numerical failure: " << error.what() << "\n";
    return kExitNumericalFailure;
  } catch (const ConfigError& error) {
    out << "config error: " << error.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& error) {
    out << "config error: " << error.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace nvwgm::cli
