#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbarrier/materials.hpp"
#include "qbarrier/pulses.hpp"
#include "qbarrier/twophoton.hpp"

namespace qbarrier {

/// Barrier description: either an H(LH)^k quarter-wave design or an
/// explicit layer list. Material fields are names into the materials map.
struct StackConfig {
  bool explicit_layers = false;
  // quarter-wave design
  int k = 5;
  double design_omega = 2.685e15;
  std::string high = "TiO2";
  std::string low = "SiO2_lossy";
  // explicit list
  struct LayerRef {
    std::string material;
    double thickness = 0.0;
  };
  std::vector<LayerRef> layers;
  std::string ambient_left = "vacuum";
  std::string ambient_right = "vacuum";
};

struct PulseConfig {
  PulseShape shape = PulseShape::time_limited;
  double t0 = 20e-15;
};

struct PumpConfig {
  double omega0 = 5.37e15;
  bool narrowband = true;
  std::vector<double> omega_nodes;
  std::vector<double> alpha_sq;
};

struct ScanConfig {
  double s_min_um = -5.0;
  double s_max_um = 15.0;
  int samples = 2048;
};

struct SweepConfig {
  std::vector<int> layer_counts;  ///< odd N = 2k+1, N >= 3
  bool lossless = true;           ///< include the absorption-free variant
  bool lossy = true;              ///< include the configured materials as-is
};

struct GridConfig {
  int points = 4096;
  double span_low = 0.2;   ///< grid = [span_low, span_high] * carrier
  double span_high = 1.8;
};

struct KkConfig {
  std::string material = "lorentz_fixture";
  int base_points = 4096;
  int refinements = 3;
};

struct OutputConfig {
  std::string directory = "results";
  std::vector<std::string> formats = {"csv"};  ///< only "csv" is supported
};

/// Full experiment description, loadable from JSON.
struct ExperimentConfig {
  std::map<std::string, MaterialModel> materials;
  StackConfig stack;
  PulseConfig pulse;
  PumpConfig pump;
  ScanConfig scan;
  SweepConfig sweep;
  GridConfig grid;
  KkConfig kk;
  OutputConfig output;
};

/// Default configuration: TiO2 / fused-silica H(LH)^5 quarter-wave
/// barrier at the 702 nm photon line, time-limited 20 fs pulse,
/// narrowband pump, delay sweep over N = 15..31 in both loss settings.
ExperimentConfig default_config();

/// Parse / serialize the JSON document. parse_config throws ConfigError
/// with a location-bearing message on malformed input.
ExperimentConfig parse_config(const std::string& json_text);
std::string serialize_config(const ExperimentConfig& config);

ExperimentConfig load_config_file(const std::string& path);

/// Deterministic 64-bit hash of the canonical serialized form.
std::string config_hash(const ExperimentConfig& config);

/// Resolved pieces of a configuration.
LayerStack build_stack(const ExperimentConfig& config);
PulseSpec build_pulse(const ExperimentConfig& config);
PumpSpec build_pump(const ExperimentConfig& config);
SpectralGrid build_grid(const ExperimentConfig& config);
std::vector<double> build_s_grid(const ExperimentConfig& config);

/// Tabular result with a metadata preamble; all values SI.
struct ResultTable {
  std::string name;                         ///< file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> metadata;        ///< emitted as '# key: value'
};

/// One row per grid frequency: omega, Re T12, Im T12, |T12|^2.
ResultTable run_transmittance(const ExperimentConfig& config);

/// One row per translation length: s, R.
ResultTable run_coincidence(const ExperimentConfig& config);

/// One row per (loss setting, N): lossy flag, N, l, delta_tau, tau_t,
/// fringe_count, and a flag marking rows outside the single-traversal-time
/// regime (fringe_count > 1).
ResultTable run_delay_sweep(const ExperimentConfig& config);

/// Two tables: (omega, |fbar|) and (t, Ibar).
struct ProfileTables {
  ResultTable spectrum;
  ResultTable intensity;
};
ProfileTables run_profiles(const ExperimentConfig& config);

/// One row per refinement level: points, residual, for the configured
/// material and a grid spanning [omega_c/10, 10 omega_c].
ResultTable run_kk_check(const ExperimentConfig& config);

/// CSV rendering: '#' metadata block, header row, rows with 17
/// significant digits. write_csv creates parent directories.
std::string to_csv(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& directory);

}  // namespace qbarrier
