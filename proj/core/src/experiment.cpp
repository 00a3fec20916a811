#include "qbarrier/experiment.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbarrier/constants.hpp"
#include "qbarrier/errors.hpp"

namespace qbarrier {

namespace {

using nlohmann::json;

json material_to_json(const MaterialModel& model) {
  json j;
  if (const auto* c = std::get_if<ConstantIndex>(&model)) {
    j["type"] = "constant";
    j["n"] = {c->n.beta, c->n.gamma};
  } else {
    const auto& lo = std::get<LorentzOscillator>(model);
    j["type"] = "lorentz";
    j["omega_T"] = lo.omega_T;
    j["omega_p"] = lo.omega_p;
    j["damping"] = lo.damping;
  }
  return j;
}

MaterialModel material_from_json(const std::string& name, const json& j) {
  const std::string where = "materials." + name;
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant") {
      const auto n = j.at("n");
      return ConstantIndex(n.at(0).get<double>(), n.at(1).get<double>());
    }
    if (type == "lorentz") {
      return LorentzOscillator(j.at("omega_T").get<double>(),
                               j.at("omega_p").get<double>(),
                               j.at("damping").get<double>());
    }
    throw ConfigError(where + ": unknown material type '" + type + "'");
  } catch (const json::exception& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

const MaterialModel& resolve_material(const ExperimentConfig& config,
                                      const std::string& name,
                                      const std::string& where) {
  const auto it = config.materials.find(name);
  if (it == config.materials.end()) {
    throw ConfigError(where + ": unknown material '" + name + "'");
  }
  return it->second;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.materials["vacuum"] = ConstantIndex(1.0, 0.0);
  cfg.materials["TiO2"] = ConstantIndex(2.22, 0.0);
  cfg.materials["SiO2"] = ConstantIndex(1.41, 0.0);
  cfg.materials["SiO2_lossy"] = ConstantIndex(1.41, 0.0372);
  // Lorentz fixture centered on the photon line for the KK diagnostic
  const double omega_T = 2.685e15;
  cfg.materials["lorentz_fixture"] =
      LorentzOscillator(omega_T, 0.5 * omega_T, 0.05 * omega_T);

  cfg.stack.k = 5;
  cfg.stack.design_omega = 2.685e15;
  cfg.stack.high = "TiO2";
  cfg.stack.low = "SiO2_lossy";

  cfg.pulse.shape = PulseShape::time_limited;
  cfg.pulse.t0 = 20e-15;

  cfg.pump.omega0 = 5.37e15;
  cfg.pump.narrowband = true;

  cfg.scan = ScanConfig{};
  cfg.sweep.layer_counts = {15, 17, 19, 21, 23, 25, 27, 29, 31};
  cfg.sweep.lossless = true;
  cfg.sweep.lossy = true;

  cfg.grid = GridConfig{};
  cfg.kk = KkConfig{};
  cfg.output = OutputConfig{};
  return cfg;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  ExperimentConfig cfg;
  try {
    for (const auto& [name, value] : j.at("materials").items()) {
      cfg.materials[name] = material_from_json(name, value);
    }
    if (!cfg.materials.count("vacuum")) {
      cfg.materials["vacuum"] = ConstantIndex(1.0, 0.0);
    }

    const json& st = j.at("stack");
    if (st.contains("layers")) {
      cfg.stack.explicit_layers = true;
      for (const auto& layer : st.at("layers")) {
        cfg.stack.layers.push_back(
            {layer.at("material").get<std::string>(),
             layer.at("thickness").get<double>()});
      }
      cfg.stack.ambient_left = st.value("ambient_left", "vacuum");
      cfg.stack.ambient_right = st.value("ambient_right", "vacuum");
    } else {
      cfg.stack.explicit_layers = false;
      cfg.stack.k = st.at("k").get<int>();
      cfg.stack.design_omega = st.at("design_omega").get<double>();
      cfg.stack.high = st.at("high").get<std::string>();
      cfg.stack.low = st.at("low").get<std::string>();
      if (cfg.stack.k < 1) throw ConfigError("stack.k: must be >= 1");
    }

    const json& pu = j.at("pulse");
    const std::string shape = pu.at("shape").get<std::string>();
    if (shape == "gaussian") {
      cfg.pulse.shape = PulseShape::gaussian;
    } else if (shape == "time_limited") {
      cfg.pulse.shape = PulseShape::time_limited;
    } else {
      throw ConfigError("pulse.shape: expected 'gaussian' or 'time_limited'");
    }
    cfg.pulse.t0 = pu.at("t0").get<double>();
    if (!(cfg.pulse.t0 > 0.0)) throw ConfigError("pulse.t0: must be positive");

    const json& pm = j.at("pump");
    cfg.pump.omega0 = pm.at("omega0").get<double>();
    if (!(cfg.pump.omega0 > 0.0)) {
      throw ConfigError("pump.omega0: must be positive");
    }
    const std::string mode = pm.value("mode", "narrowband");
    if (mode == "narrowband") {
      cfg.pump.narrowband = true;
    } else if (mode == "tabulated") {
      cfg.pump.narrowband = false;
      cfg.pump.omega_nodes = pm.at("Omega").get<std::vector<double>>();
      cfg.pump.alpha_sq = pm.at("alpha_sq").get<std::vector<double>>();
    } else {
      throw ConfigError("pump.mode: expected 'narrowband' or 'tabulated'");
    }

    const json& sc = j.at("scan");
    cfg.scan.s_min_um = sc.at("s_min_um").get<double>();
    cfg.scan.s_max_um = sc.at("s_max_um").get<double>();
    cfg.scan.samples = sc.at("samples").get<int>();
    if (!(cfg.scan.s_max_um > cfg.scan.s_min_um) || cfg.scan.samples < 64) {
      throw ConfigError("scan: require s_max_um > s_min_um and samples >= 64");
    }

    if (j.contains("sweep")) {
      const json& sw = j.at("sweep");
      cfg.sweep.layer_counts = sw.at("N").get<std::vector<int>>();
      cfg.sweep.lossless = sw.value("lossless", true);
      cfg.sweep.lossy = sw.value("lossy", true);
      for (int n : cfg.sweep.layer_counts) {
        if (n < 3 || n % 2 == 0) {
          throw ConfigError("sweep.N: layer counts must be odd and >= 3");
        }
      }
    }

    if (j.contains("grid")) {
      const json& gr = j.at("grid");
      cfg.grid.points = gr.value("points", 4096);
      if (gr.contains("span")) {
        cfg.grid.span_low = gr.at("span").at(0).get<double>();
        cfg.grid.span_high = gr.at("span").at(1).get<double>();
      }
    }

    if (j.contains("kk")) {
      const json& kk = j.at("kk");
      cfg.kk.material = kk.value("material", std::string("lorentz_fixture"));
      cfg.kk.base_points = kk.value("base_points", 4096);
      cfg.kk.refinements = kk.value("refinements", 3);
    }

    if (j.contains("output")) {
      const json& out = j.at("output");
      cfg.output.directory = out.value("directory", std::string("results"));
      if (out.contains("formats")) {
        cfg.output.formats = out.at("formats").get<std::vector<std::string>>();
      }
      for (const std::string& fmt : cfg.output.formats) {
        if (fmt != "csv") {
          throw ConfigError("output.formats: unsupported format '" + fmt + "'");
        }
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }

  // referenced names must resolve
  if (cfg.stack.explicit_layers) {
    for (const auto& layer : cfg.stack.layers) {
      resolve_material(cfg, layer.material, "stack.layers");
    }
    resolve_material(cfg, cfg.stack.ambient_left, "stack.ambient_left");
    resolve_material(cfg, cfg.stack.ambient_right, "stack.ambient_right");
  } else {
    resolve_material(cfg, cfg.stack.high, "stack.high");
    resolve_material(cfg, cfg.stack.low, "stack.low");
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& config) {
  json j;
  for (const auto& [name, model] : config.materials) {
    j["materials"][name] = material_to_json(model);
  }
  if (config.stack.explicit_layers) {
    json layers = json::array();
    for (const auto& layer : config.stack.layers) {
      layers.push_back(
          {{"material", layer.material}, {"thickness", layer.thickness}});
    }
    j["stack"]["layers"] = layers;
    j["stack"]["ambient_left"] = config.stack.ambient_left;
    j["stack"]["ambient_right"] = config.stack.ambient_right;
  } else {
    j["stack"]["k"] = config.stack.k;
    j["stack"]["design_omega"] = config.stack.design_omega;
    j["stack"]["high"] = config.stack.high;
    j["stack"]["low"] = config.stack.low;
  }
  j["pulse"]["shape"] =
      config.pulse.shape == PulseShape::gaussian ? "gaussian" : "time_limited";
  j["pulse"]["t0"] = config.pulse.t0;
  j["pump"]["omega0"] = config.pump.omega0;
  j["pump"]["mode"] = config.pump.narrowband ? "narrowband" : "tabulated";
  if (!config.pump.narrowband) {
    j["pump"]["Omega"] = config.pump.omega_nodes;
    j["pump"]["alpha_sq"] = config.pump.alpha_sq;
  }
  j["scan"]["s_min_um"] = config.scan.s_min_um;
  j["scan"]["s_max_um"] = config.scan.s_max_um;
  j["scan"]["samples"] = config.scan.samples;
  j["sweep"]["N"] = config.sweep.layer_counts;
  j["sweep"]["lossless"] = config.sweep.lossless;
  j["sweep"]["lossy"] = config.sweep.lossy;
  j["grid"]["points"] = config.grid.points;
  j["grid"]["span"] = {config.grid.span_low, config.grid.span_high};
  j["kk"]["material"] = config.kk.material;
  j["kk"]["base_points"] = config.kk.base_points;
  j["kk"]["refinements"] = config.kk.refinements;
  j["output"]["directory"] = config.output.directory;
  j["output"]["formats"] = config.output.formats;
  return j.dump(2);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_hash(const ExperimentConfig& config) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64,
                fnv1a(serialize_config(config)));
  return buf;
}

LayerStack build_stack(const ExperimentConfig& config) {
  if (config.stack.explicit_layers) {
    std::vector<Layer> layers;
    layers.reserve(config.stack.layers.size());
    for (const auto& ref : config.stack.layers) {
      layers.push_back(
          {resolve_material(config, ref.material, "stack.layers"),
           ref.thickness});
    }
    return LayerStack(
        std::move(layers),
        resolve_material(config, config.stack.ambient_left, "stack"),
        resolve_material(config, config.stack.ambient_right, "stack"));
  }
  return build_quarter_wave_stack(
      config.stack.k, resolve_material(config, config.stack.high, "stack"),
      resolve_material(config, config.stack.low, "stack"),
      config.stack.design_omega);
}

PulseSpec build_pulse(const ExperimentConfig& config) {
  return PulseSpec(config.pulse.shape, config.pulse.t0,
                   0.5 * config.pump.omega0);
}

PumpSpec build_pump(const ExperimentConfig& config) {
  if (config.pump.narrowband) {
    return PumpSpec::narrowband(config.pump.omega0);
  }
  return PumpSpec::tabulated(config.pump.omega_nodes, config.pump.alpha_sq);
}

SpectralGrid build_grid(const ExperimentConfig& config) {
  const double carrier = 0.5 * config.pump.omega0;
  try {
    return SpectralGrid(config.grid.span_low * carrier,
                        config.grid.span_high * carrier, config.grid.points);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

std::vector<double> build_s_grid(const ExperimentConfig& config) {
  std::vector<double> s(static_cast<std::size_t>(config.scan.samples));
  const double lo = config.scan.s_min_um * 1e-6;
  const double hi = config.scan.s_max_um * 1e-6;
  for (int i = 0; i < config.scan.samples; ++i) {
    s[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * i / (config.scan.samples - 1);
  }
  return s;
}

namespace {

std::vector<std::string> common_metadata(const ExperimentConfig& config,
                                         const std::string& what) {
  return {
      "tool: qbarrier " + what,
      "config_hash: " + config_hash(config),
      "units: SI (omega rad/s, s m, t s, l m); scan range [" +
          format_double(config.scan.s_min_um) + ", " +
          format_double(config.scan.s_max_um) + "] um, pulse t0 " +
          format_double(config.pulse.t0 * 1e15) + " fs",
  };
}

}  // namespace

ResultTable run_transmittance(const ExperimentConfig& config) {
  const LayerStack stack = build_stack(config);
  const SpectralGrid grid = build_grid(config);
  const std::vector<complexd> t12 = transmittance_scan(stack, grid);

  ResultTable table;
  table.name = "transmittance";
  table.columns = {"omega", "t12_re", "t12_im", "t12_abs2"};
  table.metadata = common_metadata(config, "transmittance");
  table.rows.reserve(t12.size());
  for (int i = 0; i < grid.count(); ++i) {
    const complexd t = t12[static_cast<std::size_t>(i)];
    table.rows.push_back({grid.omega(i), t.real(), t.imag(), std::norm(t)});
  }
  return table;
}

ResultTable run_coincidence(const ExperimentConfig& config) {
  const CoincidenceScan scan =
      coincidence_scan(build_stack(config), build_pulse(config),
                       build_pump(config), build_s_grid(config),
                       build_grid(config));

  ResultTable table;
  table.name = "coincidence";
  table.columns = {"s", "R"};
  table.metadata = common_metadata(config, "coincidence");
  table.rows.reserve(scan.s.size());
  for (std::size_t i = 0; i < scan.s.size(); ++i) {
    table.rows.push_back({scan.s[i], scan.r[i]});
  }
  return table;
}

ResultTable run_delay_sweep(const ExperimentConfig& config) {
  if (config.sweep.layer_counts.empty()) {
    throw ConfigError("sweep: no layer counts configured");
  }
  const PulseSpec pulse = build_pulse(config);
  const PumpSpec pump = build_pump(config);
  const SpectralGrid grid = build_grid(config);
  const std::vector<double> s_grid = build_s_grid(config);

  const MaterialModel& high =
      resolve_material(config, config.stack.high, "sweep");
  const MaterialModel& low = resolve_material(config, config.stack.low, "sweep");

  ResultTable table;
  table.name = "delay_sweep";
  table.columns = {"lossy", "N",            "l",
                   "delta_tau", "tau_t", "fringe_count",
                   "single_traversal_time"};
  table.metadata = common_metadata(config, "delay-sweep");

  struct Setting {
    bool lossy;
    MaterialModel high;
    MaterialModel low;
  };
  std::vector<Setting> settings;
  if (config.sweep.lossless) {
    settings.push_back({false, lossless_of(high), lossless_of(low)});
  }
  if (config.sweep.lossy) {
    settings.push_back({true, high, low});
  }

  for (const Setting& setting : settings) {
    for (int n_layers : config.sweep.layer_counts) {
      const int k = (n_layers - 1) / 2;
      const LayerStack stack = build_quarter_wave_stack(
          k, setting.high, setting.low, config.stack.design_omega);
      const CoincidenceScan scan =
          coincidence_scan(stack, pulse, pump, s_grid, grid);
      const DipResult dip = find_dip(scan, stack.total_thickness());
      table.rows.push_back({setting.lossy ? 1.0 : 0.0,
                            static_cast<double>(n_layers),
                            stack.total_thickness(), dip.delta_tau, dip.tau_t,
                            static_cast<double>(dip.fringe_count),
                            dip.fringe_count > 1 ? 0.0 : 1.0});
    }
  }
  return table;
}

ProfileTables run_profiles(const ExperimentConfig& config) {
  const LayerStack stack = build_stack(config);
  const TransmittedPulse profile =
      transmitted_profiles(stack, build_pulse(config), build_grid(config));

  ProfileTables out;
  out.spectrum.name = "profiles_spectrum";
  out.spectrum.columns = {"omega", "fbar_abs"};
  out.spectrum.metadata = common_metadata(config, "profiles");
  const SpectralGrid& grid = profile.spectrum.grid();
  for (int i = 0; i < grid.count(); ++i) {
    out.spectrum.rows.push_back(
        {grid.omega(i), std::abs(profile.spectrum.amplitude(i))});
  }

  out.intensity.name = "profiles_intensity";
  out.intensity.columns = {"t", "intensity"};
  out.intensity.metadata = common_metadata(config, "profiles");
  for (std::size_t k = 0; k < profile.intensity.size(); ++k) {
    out.intensity.rows.push_back(
        {profile.field.time(static_cast<int>(k)), profile.intensity[k]});
  }
  return out;
}

ResultTable run_kk_check(const ExperimentConfig& config) {
  const MaterialModel& model =
      resolve_material(config, config.kk.material, "kk.material");
  double omega_c = characteristic_frequency(model);
  if (omega_c <= 0.0) omega_c = 0.5 * config.pump.omega0;

  ResultTable table;
  table.name = "kk_check";
  table.columns = {"points", "residual"};
  table.metadata = common_metadata(config, "kk-check");
  int points = config.kk.base_points;
  for (int level = 0; level <= config.kk.refinements; ++level) {
    const SpectralGrid grid(omega_c / 10.0, 10.0 * omega_c, points);
    table.rows.push_back(
        {static_cast<double>(points), kk_residual(model, grid)});
    points *= 2;
  }
  return table;
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  for (const std::string& line : table.metadata) {
    out << "# " << line << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << format_double(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const ResultTable& table, const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + directory + "'");
  }
  const fs::path path = fs::path(directory) / (table.name + ".csv");
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << to_csv(table);
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

}  // namespace qbarrier
