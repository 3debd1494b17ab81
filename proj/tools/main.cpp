#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nvwgm/run.hpp"

namespace {

struct CommonArgs {
  std::optional<std::string> preset;
  std::optional<std::string> config_file;
  std::vector<std::string> sets;
  std::string out = "out";
  std::string format = "both";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--preset", args.preset, "named parameter set (fig2, fig3, fig5)")
      ->check(CLI::IsMember({"fig2", "fig3", "fig5"}));
  cmd->add_option("--config", args.config_file, "flat key=value config file");
  cmd->add_option("--set", args.sets, "override one key, e.g. --set stirap.g_a_MHz_over_2pi=500")
      ->take_all();
  cmd->add_option("--out", args.out, "output directory (default: out)");
  cmd->add_option("--format", args.format, "csv|summary|both (default: both)")
      ->check(CLI::IsMember({"csv", "summary", "both"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center / whispering-gallery-mode cavity entanglement simulator"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* scenario;
    const char* help;
  };
  const Sub subs[] = {
      {"w-state", "w_state", "multi-center W-state generation by virtual photon exchange"},
      {"full-vs-eff", "full_vs_eff", "detuned interaction model vs effective exchange model"},
      {"bell", "bell", "Bell-state preparation via dark-state adiabatic passage"},
      {"qit", "qit", "quantum information transfer between two centers"},
      {"sweep", "sweep", "repeat a scenario along one parameter axis"},
      {"params", "params", "print the derived parameter chains (eta, gamma, kappa, g_max)"},
  };

  std::vector<CommonArgs> args(std::size(subs));
  for (std::size_t i = 0; i < std::size(subs); ++i) {
    add_common(app.add_subcommand(subs[i].name, subs[i].help), args[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : nvwgm::cli::kExitConfigError;
  }

  for (std::size_t i = 0; i < std::size(subs); ++i) {
    const CLI::App* cmd = app.get_subcommand(subs[i].name);
    if (!cmd->parsed()) continue;
    const CommonArgs& a = args[i];
    try {
      nvwgm::cli::RunConfig config = nvwgm::cli::make_config(
          subs[i].scenario, a.preset,
          a.config_file ? std::optional<std::filesystem::path>(*a.config_file) : std::nullopt,
          a.sets);
      config.out_dir = a.out;
      config.format = a.format == "csv"       ? nvwgm::cli::OutputFormat::csv
                      : a.format == "summary" ? nvwgm::cli::OutputFormat::summary
                                              : nvwgm::cli::OutputFormat::both;
      return nvwgm::cli::run(config, std::cout);
    } catch (const nvwgm::cli::ConfigError& error) {
      std::cerr << "config error: " << error.what() << "\n";
      return nvwgm::cli::kExitConfigError;
    }
  }
  return nvwgm::cli::kExitConfigError;
}
