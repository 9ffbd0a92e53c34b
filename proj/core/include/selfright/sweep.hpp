#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "selfright/kinematics.hpp"
#include "selfright/provenance.hpp"
#include "selfright/rollmodel.hpp"

namespace selfright {

// Inclusive arithmetic range; the end is kept if it lies within 1e-9 steps.
struct GridRange {
  double start = 0.0;
  double step = 1.0;
  double end = 0.0;

  void validate() const;
  std::vector<double> values() const;
  bool operator==(const GridRange&) const = default;
};

struct SweepSpec {
  GridRange amplitude{std::numbers::pi / 24, std::numbers::pi / 24, std::numbers::pi / 2};
  GridRange spatial_frequency{0.0, 0.1, 1.2};
  int trials_per_cell = 5;
  int cycles_per_trial = 3;
  std::uint64_t seed = 0;
  Morphology morphology;
  RollMode mode = RollMode::kLumped;
  double temporal_frequency = 1.0;
  int steps_per_cycle = 1024;
  Calibration calibration;
  // Magnitudes only; each trial gets its own derived seed.
  PerturbationSpec perturbation = PerturbationSpec::standard(0);
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
  bool operator==(const SweepSpec&) const = default;
};

struct CellResult {
  std::size_t amplitude_index = 0;
  std::size_t xi_index = 0;
  double amplitude = 0.0;
  double spatial_frequency = 0.0;
  std::vector<double> trial_rolls;  // rolls per cycle, one per trial
  double mean_rolls_per_cycle = 0.0;
  double p_sr = 0.0;  // NaN when the cell failed
  std::string error;

  bool failed() const { return !error.empty(); }
};

struct BehaviorDiagram {
  SweepSpec spec;
  std::vector<double> amplitudes;
  std::vector<double> spatial_frequencies;
  std::vector<CellResult> cells;  // amplitude-major

  const CellResult& at(std::size_t amplitude_index, std::size_t xi_index) const {
    return cells.at(amplitude_index * spatial_frequencies.size() + xi_index);
  }
};

// Seed for one trial. Streams depend on the xi column and trial number, not
// on the amplitude, so cells along an amplitude column see the same
// perturbation draws.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t xi_index, std::size_t trial);

BehaviorDiagram run_sweep(const SweepSpec& spec);

// Mean of per-trial rolls per cycle, clamped to [0, 1].
double estimate_psr(std::span<const double> trial_rolls);

// Fraction of evaluated cells whose p_sr lies in (0.2, 0.8).
double binariness(const BehaviorDiagram& diagram);

// A_rad,xi,trial,rolls_per_cycle,p_sr with one row per trial and an "all"
// summary row per cell; provenance in leading '#' lines.
void write_diagram_csv(std::ostream& out, const BehaviorDiagram& diagram,
                       const Provenance& provenance);
void write_diagram_json(std::ostream& out, const BehaviorDiagram& diagram,
                        const Provenance& provenance);

}  // namespace selfright
