#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "selfright/gait.hpp"
#include "selfright/kinematics.hpp"

namespace selfright {

inline constexpr double kGravity = 9.81;  // m/s^2

// Potential energy of the body over roll angle, sampled on a uniform grid.
struct EnergyLandscape {
  std::vector<double> gamma;   // rad, uniform on [0, 2pi)
  std::vector<double> energy;  // J
  std::vector<double> minima;  // rad, sorted
  double barrier = 0.0;        // J, rise along the righting roll pi -> 2pi

  std::size_t resolution() const { return gamma.size(); }
  double step() const;
  // Periodic linear interpolation of the samples.
  double energy_at(double g) const;
  // Slope of the interpolated landscape: the central difference about the
  // midpoint of the grid cell containing g.
  double slope_at(double g) const;
  double max_slope() const;
  double mean_energy() const;

 private:
  friend EnergyLandscape landscape_from_samples(std::vector<double> energy);
  std::vector<double> slope_;
};

// Builds grid, slopes, minima and barrier for samples on [0, 2pi).
EnergyLandscape landscape_from_samples(std::vector<double> energy);

// U(gamma) = M m g h(gamma) where h is the rest height of the body axis.
EnergyLandscape energy_landscape(const Morphology& morph, int resolution = 1024);

// Strict local minima of the sampled energy. A run of equal samples bounded
// by strictly higher neighbours counts as one minimum at its midpoint; a
// landscape that is flat everywhere has none.
std::vector<double> stable_configurations(const EnergyLandscape& landscape);

// The roll relaxes to equilibrium at every step, so results depend on gait
// phase only and no rate constant is needed.
struct Calibration {
  double coupling = 0.5;             // N m/rad, torsional, segmented mode
  double drive_scale = 2.1;          // dimensionless gain on the roll drive
  double contact_tolerance = 0.002;  // m, sidewinding contact band

  void validate() const;
  bool operator==(const Calibration&) const = default;
};

// |sum_i exp(j 2 pi xi i / N)| / N over the lateral joints; values below
// 1e-12 are reported as exactly zero.
double coherence(double spatial_frequency, int num_lateral_joints);

// Sum over vertical joints of the lift one joint gives its distal link.
double wave_lift(const Morphology& morph, const GaitParams& params);

// Amplitude of the rolling torque, before phase coherence is applied.
double segment_drive_gain(const GaitParams& params, const Morphology& morph,
                          const Calibration& calib = {});

// G = drive_scale * M m g * lift / 2 * C(xi).
double drive_gain(const GaitParams& params, const Morphology& morph,
                  const Calibration& calib = {});

// tau = G sin(omega t - gamma), with gamma measured from the start pose.
double roll_drive(const GaitParams& params, const Morphology& morph, double t,
                  double gamma, const Calibration& calib = {});

enum class RollMode { kLumped, kSegmented };

std::string_view to_string(RollMode mode);
RollMode parse_roll_mode(std::string_view text);

struct PerturbationSpec {
  double initial_jitter = 0.0;  // rad, uniform +-
  double gain_noise = 0.0;      // relative, uniform +-
  std::uint64_t seed = 0;

  static PerturbationSpec none() { return {}; }
  static PerturbationSpec standard(std::uint64_t seed) { return {0.2, 0.1, seed}; }
  bool enabled() const { return initial_jitter > 0.0 || gain_noise > 0.0; }
  bool operator==(const PerturbationSpec&) const = default;
};

struct RollState {
  double gamma = std::numbers::pi;  // rad, unwrapped; pi is inverted
  double time = 0.0;
};

struct SimulationOptions {
  int cycles = 1;
  bool half_cycle = false;  // one-shot: run omega t over [0, pi] only
  int steps_per_cycle = 1024;
  int landscape_resolution = 1024;
  RollMode mode = RollMode::kLumped;
  Calibration calibration;
  PerturbationSpec perturbation;

  void validate() const;
};

struct RollTrajectory {
  RollMode mode = RollMode::kLumped;
  int cycles = 0;
  double period = 0.0;          // s, one gait cycle
  double phase_per_cycle = 0.0;  // 2pi, or pi for a half-cycle run
  double drive_gain = 0.0;      // N m, after perturbation
  std::vector<double> time;
  std::vector<std::vector<double>> gamma;  // [sample][module]; 1 column lumped
  std::vector<double> delta_gamma_per_cycle;

  std::size_t num_modules() const { return gamma.empty() ? 0 : gamma.front().size(); }
  // Body roll: the module mean in segmented mode.
  double body_gamma(std::size_t sample) const;
  double total_delta_gamma() const;
  // First time each module's roll exceeds its start by `rise`, if ever.
  std::vector<std::optional<double>> crossing_times(double rise) const;
};

// Quasi-static roll response of the body to the gait. Each step advances
// the commanded phase and relaxes gamma down the gradient of
// U(gamma) - G cos(phi - gamma) to the nearest equilibrium, never past phi.
RollTrajectory simulate_roll(const GaitParams& params, const Morphology& morph,
                             const SimulationOptions& options,
                             const RollState& init = {});

// Same, reusing a landscape built for `morph`.
RollTrajectory simulate_roll(const GaitParams& params, const Morphology& morph,
                             const EnergyLandscape& landscape,
                             const SimulationOptions& options,
                             const RollState& init = {});

struct TrialOutcome {
  bool self_righted = false;
  double rolls_per_cycle = 0.0;
  bool stalled = false;
};

// |gamma rate| below this for a commanded quarter cycle marks a stall.
inline constexpr double kStallRate = 1e-4;  // rad/s

// Mean roll per cycle smaller than this is below the equilibrium solver's
// resolution and is classified as no roll at all.
inline constexpr double kRollResolution = 1e-9;  // rad

TrialOutcome classify_trial(const RollTrajectory& traj);

}  // namespace selfright
