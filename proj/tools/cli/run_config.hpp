#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "selfright/gait.hpp"
#include "selfright/kinematics.hpp"
#include "selfright/rollmodel.hpp"
#include "selfright/sidewinding.hpp"
#include "selfright/sweep.hpp"

namespace selfright::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulationSettings {
  RollMode mode = RollMode::kLumped;
  int cycles = 1;
  bool half_cycle = false;
  int steps_per_cycle = 1024;
  double initial_gamma = std::numbers::pi;
  bool perturb = false;
  double initial_jitter = 0.2;
  double gain_noise = 0.1;

  bool operator==(const SimulationSettings&) const = default;
};

struct SweepSettings {
  GridRange amplitude{std::numbers::pi / 24, std::numbers::pi / 24, std::numbers::pi / 2};
  GridRange spatial_frequency{0.0, 0.1, 1.2};
  int trials_per_cell = 5;
  int cycles_per_trial = 3;
  bool perturb = true;
  double initial_jitter = 0.2;
  double gain_noise = 0.1;

  bool operator==(const SweepSettings&) const = default;
};

struct SidewindSettings {
  int cycles = 1;
  int samples_per_cycle = 400;

  bool operator==(const SidewindSettings&) const = default;
};

struct RunConfig {
  Morphology morphology;
  GaitParams gait;
  SimulationSettings simulation;
  SweepSettings sweep;
  SidewindSettings sidewind;
  Calibration calibration;
  int gait_samples = 64;
  int energy_resolution = 1024;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  // Checks every nested invariant; throws ConfigError.
  void validate() const;

  SimulationOptions simulation_options() const;
  SweepSpec sweep_spec(int threads = 0) const;
  SidewindOptions sidewind_options() const;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

// Sorted-key dump of everything that affects results (the output
// directory is left out).
std::string canonical_json(const RunConfig& config);
Provenance provenance_of(const RunConfig& config);

}  // namespace selfright::cli
