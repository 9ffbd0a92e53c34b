#include "run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace selfright::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ConfigError(std::string(where) + ": expected an object");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& into, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    into = it->template get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong type");
  }
}

json grid_to_json(const GridRange& g) {
  return {{"start", g.start}, {"step", g.step}, {"end", g.end}};
}

GridRange grid_from_json(const json& j, std::string_view where) {
  reject_unknown(j, where, {"start", "step", "end"});
  GridRange g;
  read(j, "start", g.start, where);
  read(j, "step", g.step, where);
  read(j, "end", g.end, where);
  return g;
}

template <typename F>
void wrap(std::string_view what, F&& check) {
  try {
    check();
  } catch (const std::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  wrap("morphology", [&] { morphology.validate(); });
  wrap("gait", [&] {
    gait.validate();
    morphology.check_compatible(gait);
  });
  wrap("calibration", [&] { calibration.validate(); });
  wrap("simulation", [&] { simulation_options().validate(); });
  wrap("sweep", [&] { sweep_spec().validate(); });
  wrap("sidewind", [&] {
    sidewind_options().validate();
    if (sidewind.cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  });
  if (gait_samples < 2) throw ConfigError("gait_samples must be >= 2");
  if (energy_resolution < 64) throw ConfigError("energy_resolution must be >= 64");
}

SimulationOptions RunConfig::simulation_options() const {
  SimulationOptions o;
  o.cycles = simulation.cycles;
  o.half_cycle = simulation.half_cycle;
  o.steps_per_cycle = simulation.steps_per_cycle;
  o.landscape_resolution = energy_resolution;
  o.mode = simulation.mode;
  o.calibration = calibration;
  if (simulation.perturb) {
    o.perturbation = {simulation.initial_jitter, simulation.gain_noise, seed};
  }
  return o;
}

SweepSpec RunConfig::sweep_spec(int threads) const {
  SweepSpec s;
  s.amplitude = sweep.amplitude;
  s.spatial_frequency = sweep.spatial_frequency;
  s.trials_per_cell = sweep.trials_per_cell;
  s.cycles_per_trial = sweep.cycles_per_trial;
  s.seed = seed;
  s.morphology = morphology;
  s.mode = simulation.mode;
  s.temporal_frequency = gait.temporal_frequency;
  s.steps_per_cycle = simulation.steps_per_cycle;
  s.calibration = calibration;
  s.perturbation = sweep.perturb
                       ? PerturbationSpec{sweep.initial_jitter, sweep.gain_noise, seed}
                       : PerturbationSpec::none();
  s.threads = threads;
  return s;
}

SidewindOptions RunConfig::sidewind_options() const {
  SidewindOptions o;
  o.contact_tolerance = calibration.contact_tolerance;
  o.samples_per_cycle = sidewind.samples_per_cycle;
  return o;
}

nlohmann::json to_json(const RunConfig& c) {
  const auto& m = c.morphology;
  const auto& s = c.simulation;
  const auto& w = c.sweep;
  return {
      {"morphology",
       {{"num_modules", m.num_modules},
        {"link_length", m.link_length},
        {"body_radius", m.body_radius},
        {"leg_length", m.leg_length},
        {"leg_angle", m.leg_angle},
        {"module_mass", m.module_mass}}},
      {"gait",
       {{"amplitude_lateral", c.gait.amplitude_lateral},
        {"amplitude_vertical", c.gait.amplitude_vertical},
        {"temporal_frequency", c.gait.temporal_frequency},
        {"spatial_frequency", c.gait.spatial_frequency},
        {"num_lateral_joints", c.gait.num_lateral_joints}}},
      {"simulation",
       {{"mode", std::string(to_string(s.mode))},
        {"cycles", s.cycles},
        {"half_cycle", s.half_cycle},
        {"steps_per_cycle", s.steps_per_cycle},
        {"initial_gamma", s.initial_gamma},
        {"perturb", s.perturb},
        {"initial_jitter", s.initial_jitter},
        {"gain_noise", s.gain_noise}}},
      {"sweep",
       {{"amplitude", grid_to_json(w.amplitude)},
        {"spatial_frequency", grid_to_json(w.spatial_frequency)},
        {"trials_per_cell", w.trials_per_cell},
        {"cycles_per_trial", w.cycles_per_trial},
        {"perturb", w.perturb},
        {"initial_jitter", w.initial_jitter},
        {"gain_noise", w.gain_noise}}},
      {"sidewind",
       {{"cycles", c.sidewind.cycles},
        {"samples_per_cycle", c.sidewind.samples_per_cycle}}},
      {"calibration",
       {{"coupling", c.calibration.coupling},
        {"drive_scale", c.calibration.drive_scale},
        {"contact_tolerance", c.calibration.contact_tolerance}}},
      {"gait_samples", c.gait_samples},
      {"energy_resolution", c.energy_resolution},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
  };
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  reject_unknown(j, "config",
                 {"morphology", "gait", "simulation", "sweep", "sidewind",
                  "calibration", "gait_samples", "energy_resolution", "seed",
                  "output_dir"});

  if (auto it = j.find("morphology"); it != j.end()) {
    reject_unknown(*it, "morphology",
                   {"num_modules", "link_length", "body_radius", "leg_length",
                    "leg_angle", "module_mass"});
    auto& m = c.morphology;
    read(*it, "num_modules", m.num_modules, "morphology");
    read(*it, "link_length", m.link_length, "morphology");
    read(*it, "body_radius", m.body_radius, "morphology");
    read(*it, "leg_length", m.leg_length, "morphology");
    read(*it, "leg_angle", m.leg_angle, "morphology");
    read(*it, "module_mass", m.module_mass, "morphology");
  }
  // The lateral joint count follows the morphology unless given explicitly.
  c.gait.num_lateral_joints = c.morphology.num_lateral_joints();
  if (auto it = j.find("gait"); it != j.end()) {
    reject_unknown(*it, "gait",
                   {"amplitude_lateral", "amplitude_vertical", "temporal_frequency",
                    "spatial_frequency", "num_lateral_joints"});
    auto& g = c.gait;
    read(*it, "amplitude_lateral", g.amplitude_lateral, "gait");
    read(*it, "amplitude_vertical", g.amplitude_vertical, "gait");
    read(*it, "temporal_frequency", g.temporal_frequency, "gait");
    read(*it, "spatial_frequency", g.spatial_frequency, "gait");
    read(*it, "num_lateral_joints", g.num_lateral_joints, "gait");
  }
  if (auto it = j.find("simulation"); it != j.end()) {
    reject_unknown(*it, "simulation",
                   {"mode", "cycles", "half_cycle", "steps_per_cycle",
                    "initial_gamma", "perturb", "initial_jitter", "gain_noise"});
    auto& s = c.simulation;
    std::string mode(to_string(s.mode));
    read(*it, "mode", mode, "simulation");
    wrap("simulation.mode", [&] { s.mode = parse_roll_mode(mode); });
    read(*it, "cycles", s.cycles, "simulation");
    read(*it, "half_cycle", s.half_cycle, "simulation");
    read(*it, "steps_per_cycle", s.steps_per_cycle, "simulation");
    read(*it, "initial_gamma", s.initial_gamma, "simulation");
    read(*it, "perturb", s.perturb, "simulation");
    read(*it, "initial_jitter", s.initial_jitter, "simulation");
    read(*it, "gain_noise", s.gain_noise, "simulation");
  }
  if (auto it = j.find("sweep"); it != j.end()) {
    reject_unknown(*it, "sweep",
                   {"amplitude", "spatial_frequency", "trials_per_cell",
                    "cycles_per_trial", "perturb", "initial_jitter", "gain_noise"});
    auto& w = c.sweep;
    if (auto g = it->find("amplitude"); g != it->end()) {
      w.amplitude = grid_from_json(*g, "sweep.amplitude");
    }
    if (auto g = it->find("spatial_frequency"); g != it->end()) {
      w.spatial_frequency = grid_from_json(*g, "sweep.spatial_frequency");
    }
    read(*it, "trials_per_cell", w.trials_per_cell, "sweep");
    read(*it, "cycles_per_trial", w.cycles_per_trial, "sweep");
    read(*it, "perturb", w.perturb, "sweep");
    read(*it, "initial_jitter", w.initial_jitter, "sweep");
    read(*it, "gain_noise", w.gain_noise, "sweep");
  }
  if (auto it = j.find("sidewind"); it != j.end()) {
    reject_unknown(*it, "sidewind", {"cycles", "samples_per_cycle"});
    read(*it, "cycles", c.sidewind.cycles, "sidewind");
    read(*it, "samples_per_cycle", c.sidewind.samples_per_cycle, "sidewind");
  }
  if (auto it = j.find("calibration"); it != j.end()) {
    reject_unknown(*it, "calibration",
                   {"coupling", "drive_scale", "contact_tolerance"});
    auto& k = c.calibration;
    read(*it, "coupling", k.coupling, "calibration");
    read(*it, "drive_scale", k.drive_scale, "calibration");
    read(*it, "contact_tolerance", k.contact_tolerance, "calibration");
  }
  read(j, "gait_samples", c.gait_samples, "config");
  read(j, "energy_resolution", c.energy_resolution, "config");
  read(j, "seed", c.seed, "config");
  read(j, "output_dir", c.output_dir, "config");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::string canonical_json(const RunConfig& config) {
  auto j = to_json(config);
  j.erase("output_dir");
  return j.dump();
}

Provenance provenance_of(const RunConfig& config) {
  return make_provenance(canonical_json(config), config.seed);
}

}  // namespace selfright::cli
