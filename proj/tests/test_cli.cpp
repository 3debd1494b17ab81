#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nvwgm/kernels.hpp"
#include "nvwgm/run.hpp"

using namespace nvwgm;
using namespace nvwgm::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nvwgm_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunConfig small_qit_config(const fs::path& out) {
  RunConfig config = make_config("qit", std::nullopt, std::nullopt,
                                 {"n_steps=120", "stirap.t_end_ns=12"});
  config.out_dir = out;
  return config;
}

}  // namespace

TEST_CASE("config value resolution and validation") {
  SUBCASE("preset then override") {
    RunConfig config = make_config("qit", std::string("fig5"), std::nullopt,
                                   {"stirap.kappa_MHz_over_2pi=50"});
    CHECK(config.number("stirap.kappa_MHz_over_2pi", 0.0) == 50.0);
    CHECK(config.number("stirap.g_a_MHz_over_2pi", 0.0) == 1000.0);
    CHECK(config.number("stirap.delta_tau_ns", 0.0) == 1.8);
    CHECK(config.text("scenario", "") == "");  // scenario kept in its own field
    CHECK(config.scenario == "qit");
  }
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_AS(make_config("qit", std::nullopt, std::nullopt, {"bogus=1"}), ConfigError);
    CHECK_THROWS_AS(make_config("qit", std::nullopt, std::nullopt, {"no_equals"}), ConfigError);
  }
  SUBCASE("missing unit suffix gets a suggestion") {
    try {
      make_config("qit", std::nullopt, std::nullopt, {"stirap.g_a=1000"});
      FAIL("expected ConfigError");
    } catch (const ConfigError& error) {
      const std::string what = error.what();
      CHECK(what.find("stirap.g_a_MHz_over_2pi") != std::string::npos);
      CHECK(what.find("unit suffix") != std::string::npos);
    }
  }
  SUBCASE("malformed numbers are rejected") {
    CHECK_THROWS_AS(make_config("qit", std::nullopt, std::nullopt, {"n_steps=twelve"}),
                    ConfigError);
    CHECK_THROWS_AS(
        make_config("qit", std::nullopt, std::nullopt, {"stirap.g_a_MHz_over_2pi=1..0"}),
        ConfigError);
  }
  SUBCASE("unknown preset") {
    CHECK_THROWS_AS(make_config("qit", std::string("fig9"), std::nullopt, {}), ConfigError);
  }
}

TEST_CASE("config files parse with line diagnostics") {
  const fs::path dir = fresh_dir("cfg");
  fs::create_directories(dir);
  const fs::path good = dir / "good.cfg";
  {
    std::ofstream out(good);
    out << "# comment line\n";
    out << "\n";
    out << "wstate.n_sites = 6\n";
    out << "wstate.gamma_MHz_over_2pi = 4\n";
  }
  RunConfig config = make_config("w_state", std::nullopt, good, {});
  CHECK(config.integer("wstate.n_sites", 0) == 6);

  const fs::path bad = dir / "bad.cfg";
  {
    std::ofstream out(bad);
    out << "wstate.n_sites = 6\n";
    out << "nonsense.key = 3\n";
  }
  try {
    make_config("w_state", std::nullopt, bad, {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    const std::string what = error.what();
    CHECK(what.find(":2") != std::string::npos);
    CHECK(what.find("nonsense.key") != std::string::npos);
  }

  const fs::path conflicted = dir / "conflict.cfg";
  {
    std::ofstream out(conflicted);
    out << "scenario = bell\n";
  }
  CHECK_THROWS_AS(make_config("qit", std::nullopt, conflicted, {}), ConfigError);
}

TEST_CASE("value lists") {
  CHECK(parse_value_list("4,6,8") == std::vector<double>{4.0, 6.0, 8.0});
  CHECK(parse_value_list(" 0.5 , 1.5 ") == std::vector<double>{0.5, 1.5});
  CHECK(parse_value_list("").empty());
  CHECK_THROWS_AS(parse_value_list("1,x"), ConfigError);
}

TEST_CASE("run writes tables, summary, and reports pass") {
  const fs::path dir = fresh_dir("run");
  std::ostringstream log;
  const int code = run(small_qit_config(dir), log);
  CHECK(code == kExitPass);
  CHECK(fs::exists(dir / "qit_ideal.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK_FALSE(fs::exists(dir / "qit_decay.csv"));  // no decay rates set
  const std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("\"scenario\": \"qit\"") != std::string::npos);
  CHECK(summary.find("ideal_final_transfer_fidelity") != std::string::npos);
  CHECK(summary.find("\"n_steps\": \"120\"") != std::string::npos);  // config echo
  CHECK(log.str().find("[PASS]") != std::string::npos);
}

TEST_CASE("csv tables are headered and round-trip at full precision") {
  const fs::path dir = fresh_dir("csv");
  std::ostringstream log;
  REQUIRE(run(small_qit_config(dir), log) == kExitPass);
  std::ifstream in(dir / "qit_ideal.csv");
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header.rfind("t_ns,", 0) == 0);
  CHECK(header.find("pop_01_c0_top_dotted") != std::string::npos);
  CHECK(header.find("norm") != std::string::npos);

  // Every numeric cell parses back to a double that prints identically.
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::size_t begin = 0;
    while (begin <= line.size()) {
      std::size_t end = line.find(',', begin);
      if (end == std::string::npos) end = line.size();
      const std::string cell = line.substr(begin, end - begin);
      const double value = std::stod(cell);
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", value);
      CHECK(cell == buf);
      begin = end + 1;
      if (end == line.size()) break;
    }
  }
  CHECK(rows == 121);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  std::ostringstream log;
  RunConfig config_a = small_qit_config(dir_a);
  RunConfig config_b = small_qit_config(dir_b);
  REQUIRE(run(config_a, log) == kExitPass);
  REQUIRE(run(config_b, log) == kExitPass);
  CHECK(slurp(dir_a / "qit_ideal.csv") == slurp(dir_b / "qit_ideal.csv"));
}

TEST_CASE("threading does not change the bytes") {
  const fs::path dir_serial = fresh_dir("omp_off");
  const fs::path dir_parallel = fresh_dir("omp_on");
  std::ostringstream log;
  RunConfig config = make_config("w_state", std::nullopt, std::nullopt,
                                 {"wstate.n_sites=8", "n_steps=160"});
  const bool was = kernels::parallel_enabled();
  kernels::set_parallel(false);
  config.out_dir = dir_serial;
  REQUIRE(run(config, log) == kExitPass);
  kernels::set_parallel(true);
  config.out_dir = dir_parallel;
  REQUIRE(run(config, log) == kExitPass);
  kernels::set_parallel(was);
  CHECK(slurp(dir_serial / "w_state_ideal.csv") == slurp(dir_parallel / "w_state_ideal.csv"));
}

TEST_CASE("format selection") {
  std::ostringstream log;
  SUBCASE("csv only") {
    const fs::path dir = fresh_dir("fmt_csv");
    RunConfig config = small_qit_config(dir);
    config.format = OutputFormat::csv;
    REQUIRE(run(config, log) == kExitPass);
    CHECK(fs::exists(dir / "qit_ideal.csv"));
    CHECK_FALSE(fs::exists(dir / "summary.json"));
  }
  SUBCASE("summary only") {
    const fs::path dir = fresh_dir("fmt_sum");
    RunConfig config = small_qit_config(dir);
    config.format = OutputFormat::summary;
    REQUIRE(run(config, log) == kExitPass);
    CHECK_FALSE(fs::exists(dir / "qit_ideal.csv"));
    CHECK(fs::exists(dir / "summary.json"));
  }
}

TEST_CASE("exit codes") {
  std::ostringstream log;
  SUBCASE("threshold failure") {
    const fs::path dir = fresh_dir("thresh");
    RunConfig config = make_config(
        "qit", std::nullopt, std::nullopt,
        {"n_steps=120", "stirap.delta_tau_ns=0.2", "qit.min_final_transfer=0.98"});
    config.out_dir = dir;
    CHECK(run(config, log) == kExitThresholdFailure);
  }
  SUBCASE("config error") {
    RunConfig config;
    config.scenario = "no_such";
    config.out_dir = fresh_dir("cfg_err");
    CHECK(run(config, log) == kExitConfigError);
  }
  SUBCASE("numerical failure") {
    const fs::path dir = fresh_dir("numfail");
    RunConfig config = make_config("qit", std::nullopt, std::nullopt,
                                   {"integrator.max_steps=10", "n_steps=120"});
    config.out_dir = dir;
    CHECK(run(config, log) == kExitNumericalFailure);
  }
}

TEST_CASE("sweep emits per-value tables and a metric table") {
  const fs::path dir = fresh_dir("sweep");
  std::ostringstream log;
  RunConfig config = make_config(
      "sweep", std::nullopt, std::nullopt,
      {"sweep.scenario=w_state", "sweep.axis=gamma_eff_over_gamma", "sweep.values=0,0.01",
       "n_steps=100", "wstate.gamma_t_span=0.78539816339744828"});
  config.out_dir = dir;
  REQUIRE(run(config, log) == kExitPass);
  CHECK(fs::exists(dir / "w_state_00_ideal.csv"));
  CHECK(fs::exists(dir / "w_state_00_decay.csv"));
  CHECK(fs::exists(dir / "w_state_01_decay.csv"));
  CHECK(fs::exists(dir / "sweep_metrics.csv"));
  std::ifstream metrics(dir / "sweep_metrics.csv");
  std::string header;
  REQUIRE(std::getline(metrics, header));
  CHECK(header.rfind("sweep_value,", 0) == 0);
  CHECK(header.find("decay_fidelity_conditional_final") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(metrics, line);) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("params run reproduces the derived chains") {
  const fs::path dir = fresh_dir("params");
  std::ostringstream log;
  RunConfig config = make_config("params", std::nullopt, std::nullopt, {});
  config.out_dir = dir;
  REQUIRE(run(config, log) == kExitPass);
  const std::string summary = slurp(dir / "summary.json");
  CHECK(summary.find("\"kappa_2pi_MHz\": \"2pi x 0.47 MHz\"") != std::string::npos);
  CHECK(summary.find("\"eta_2pi_MHz\": \"2pi x 20 MHz\"") != std::string::npos);
  CHECK(summary.find("\"gamma_2pi_MHz\": \"2pi x 4 MHz\"") != std::string::npos);
}

TEST_CASE("fig presets resolve to their documented scenarios") {
  CHECK(preset_scenario("fig2") == "sweep");
  CHECK(preset_scenario("fig3") == "sweep");
  CHECK(preset_scenario("fig5") == "qit");
  CHECK(preset("fig5").at("stirap.kappa_MHz_over_2pi") == "100");
  CHECK(preset_names().size() == 3);
}
