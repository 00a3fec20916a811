#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qbarrier/errors.hpp"
#include "qbarrier/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string config_path;
  std::string output_dir;
  int grid_points = 0;
  bool force_narrowband = false;
  bool force_tabulated = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("config", opt.config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--output-dir", opt.output_dir,
                  "override the configured output directory");
  cmd->add_option("--grid-points", opt.grid_points,
                  "override the spectral grid size (power of two)");
  cmd->add_flag("--narrowband", opt.force_narrowband,
                "force the narrowband pump approximation");
  cmd->add_flag("--tabulated-pump", opt.force_tabulated,
                "force the tabulated pump mode");
  cmd->add_flag("--quiet", opt.quiet, "suppress progress output");
}

qbarrier::ExperimentConfig load(const CommonOptions& opt) {
  qbarrier::ExperimentConfig cfg = qbarrier::load_config_file(opt.config_path);
  if (!opt.output_dir.empty()) cfg.output.directory = opt.output_dir;
  if (opt.grid_points > 0) cfg.grid.points = opt.grid_points;
  if (opt.force_narrowband) cfg.pump.narrowband = true;
  if (opt.force_tabulated) {
    if (cfg.pump.omega_nodes.empty()) {
      throw qbarrier::ConfigError(
          "--tabulated-pump: config has no pump.Omega / pump.alpha_sq table");
    }
    cfg.pump.narrowband = false;
  }
  return cfg;
}

void emit(const qbarrier::ResultTable& table, const std::string& dir,
          bool quiet) {
  qbarrier::write_csv(table, dir);
  if (!quiet) {
    std::cout << dir << "/" << table.name << ".csv\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qbarrier: multilayer-barrier photon scattering and two-photon "
      "interference sweeps"};
  app.require_subcommand(0, 1);

  bool seed_config = false;
  app.add_flag("--seed-config", seed_config,
               "print a default experiment config (JSON) and exit");

  CommonOptions transmittance_opt;
  CLI::App* transmittance = app.add_subcommand(
      "transmittance", "barrier transmittance T12 over the spectral grid");
  add_common(transmittance, transmittance_opt);

  CommonOptions coincidence_opt;
  CLI::App* coincidence = app.add_subcommand(
      "coincidence", "coincidence profile R(s) over the translation lengths");
  add_common(coincidence, coincidence_opt);

  CommonOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "delay-sweep", "temporal lead and traversal time vs layer count");
  add_common(sweep, sweep_opt);

  CommonOptions profiles_opt;
  CLI::App* profiles = app.add_subcommand(
      "profiles", "transmitted spectral line shape and intensity");
  add_common(profiles, profiles_opt);

  CommonOptions kk_opt;
  CLI::App* kk = app.add_subcommand(
      "kk-check", "Kramers-Kronig residual under grid refinement");
  add_common(kk, kk_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    if (seed_config) {
      std::cout << qbarrier::serialize_config(qbarrier::default_config())
                << "\n";
      return kExitOk;
    }
    if (transmittance->parsed()) {
      const auto cfg = load(transmittance_opt);
      emit(qbarrier::run_transmittance(cfg), cfg.output.directory,
           transmittance_opt.quiet);
    } else if (coincidence->parsed()) {
      const auto cfg = load(coincidence_opt);
      emit(qbarrier::run_coincidence(cfg), cfg.output.directory,
           coincidence_opt.quiet);
    } else if (sweep->parsed()) {
      const auto cfg = load(sweep_opt);
      emit(qbarrier::run_delay_sweep(cfg), cfg.output.directory,
           sweep_opt.quiet);
    } else if (profiles->parsed()) {
      const auto cfg = load(profiles_opt);
      const auto tables = qbarrier::run_profiles(cfg);
      emit(tables.spectrum, cfg.output.directory, profiles_opt.quiet);
      emit(tables.intensity, cfg.output.directory, profiles_opt.quiet);
    } else if (kk->parsed()) {
      const auto cfg = load(kk_opt);
      emit(qbarrier::run_kk_check(cfg), cfg.output.directory, kk_opt.quiet);
    } else {
      std::cerr << app.help();
      return kExitConfig;
    }
  } catch (const qbarrier::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qbarrier::NumericError& e) {
    std::cerr << "numerical invariant violated: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const qbarrier::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
