// ctqw — continuous-time walk sweeps, figure data, and the emulated
// two-spin NMR experiment.  See README.md for the file formats.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctqw/commands.hpp"
#include "ctqw/config.hpp"

namespace {

struct FlagOverrides {
  std::optional<std::string> out;
  std::optional<double> gamma;
  std::optional<std::string> noise;
  std::optional<int> points;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& flags) {
  cmd->add_option("--out", flags.out, "output directory for CSV files");
  cmd->add_option("--gamma", flags.gamma, "jumping rate for theory sweeps");
  cmd->add_option("--noise", flags.noise, "dephasing noise on|off")
      ->check(CLI::IsMember({"on", "off", "true", "false", "1", "0"}));
  cmd->add_option("--points", flags.points, "number of grid points");
}

ctqw::cli::RunConfig build_config(const std::string& config_path, const FlagOverrides& flags) {
  ctqw::cli::RunConfig cfg;
  if (!config_path.empty()) cfg = ctqw::cli::load_config_file(config_path);
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.gamma) cfg.gamma = *flags.gamma;
  if (flags.noise) cfg.noise = ctqw::cli::parse_bool_flag(*flags.noise);
  if (flags.points) cfg.grid_points = *flags.points;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-time classical/quantum walk simulator and two-spin NMR emulator"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value configuration file")->expected(1);

  FlagOverrides walk_flags, figures_flags, nmr_flags, verify_flags;
  std::vector<int> n_values;
  bool json_report = false;

  CLI::App* walk = app.add_subcommand("walk", "node-occupation sweeps (classical.csv, quantum.csv)");
  add_common_flags(walk, walk_flags);

  CLI::App* figures =
      app.add_subcommand("figures", "distance and entanglement curves (fig3.csv, fig4.csv)");
  add_common_flags(figures, figures_flags);

  CLI::App* nmr = app.add_subcommand("nmr", "emulated spin experiment per step index (nmr.csv)");
  add_common_flags(nmr, nmr_flags);
  nmr->add_option("--n", n_values, "comma-separated step indices in 0..12")->delimiter(',');

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  add_common_flags(verify, verify_flags);
  verify->add_flag("--json", json_report, "emit a machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // exit 2 on usage errors, 0 for --help
  }

  try {
    if (walk->parsed()) {
      const auto cfg = build_config(config_path, walk_flags);
      ctqw::cli::cmd_walk(cfg);
      std::cout << "wrote " << (cfg.output_dir / "classical.csv").string() << " and "
                << (cfg.output_dir / "quantum.csv").string() << "\n";
    } else if (figures->parsed()) {
      const auto cfg = build_config(config_path, figures_flags);
      ctqw::cli::cmd_figures(cfg);
      std::cout << "wrote " << (cfg.output_dir / "fig3.csv").string() << " and "
                << (cfg.output_dir / "fig4.csv").string() << "\n";
    } else if (nmr->parsed()) {
      const auto cfg = build_config(config_path, nmr_flags);
      std::vector<int> steps = n_values;
      if (steps.empty())
        for (int n = 0; n <= 12; ++n) steps.push_back(n);
      ctqw::cli::cmd_nmr(cfg, steps);
      std::cout << "wrote " << (cfg.output_dir / "nmr.csv").string() << "\n";
    } else if (verify->parsed()) {
      const auto cfg = build_config(config_path, verify_flags);
      return ctqw::cli::cmd_verify(cfg, json_report, std::cout);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
