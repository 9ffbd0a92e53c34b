#include "selfright/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace selfright {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CellResult run_cell(const SweepSpec& spec, const EnergyLandscape& landscape,
                    std::size_t ia, std::size_t ix, double amplitude, double xi) {
  CellResult cell;
  cell.amplitude_index = ia;
  cell.xi_index = ix;
  cell.amplitude = amplitude;
  cell.spatial_frequency = xi;
  try {
    GaitParams params = GaitParams::uniform(amplitude, xi,
                                            spec.morphology.num_lateral_joints(),
                                            spec.temporal_frequency);
    SimulationOptions options;
    options.cycles = spec.cycles_per_trial;
    options.steps_per_cycle = spec.steps_per_cycle;
    options.mode = spec.mode;
    options.calibration = spec.calibration;
    options.landscape_resolution = static_cast<int>(landscape.resolution());

    for (int trial = 0; trial < spec.trials_per_cell; ++trial) {
      options.perturbation = spec.perturbation;
      options.perturbation.seed = trial_seed(spec.seed, ix, static_cast<std::size_t>(trial));
      const auto traj = simulate_roll(params, spec.morphology, landscape, options);
      cell.trial_rolls.push_back(classify_trial(traj).rolls_per_cycle);
    }
    cell.mean_rolls_per_cycle =
        std::accumulate(cell.trial_rolls.begin(), cell.trial_rolls.end(), 0.0) /
        static_cast<double>(cell.trial_rolls.size());
    cell.p_sr = estimate_psr(cell.trial_rolls);
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.p_sr = std::numeric_limits<double>::quiet_NaN();
    cell.mean_rolls_per_cycle = std::numeric_limits<double>::quiet_NaN();
  }
  return cell;
}

nlohmann::json morphology_json(const Morphology& m) {
  return {{"num_modules", m.num_modules},   {"link_length", m.link_length},
          {"body_radius", m.body_radius},   {"leg_length", m.leg_length},
          {"leg_angle", m.leg_angle},       {"module_mass", m.module_mass}};
}

nlohmann::json nullable(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void GridRange::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!std::isfinite(start) || !std::isfinite(end) || end < start) {
    throw std::invalid_argument("grid range must satisfy start <= end");
  }
}

std::vector<double> GridRange::values() const {
  validate();
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

void SweepSpec::validate() const {
  amplitude.validate();
  spatial_frequency.validate();
  if (amplitude.start < 0.0) throw std::invalid_argument("amplitudes must be >= 0");
  if (spatial_frequency.start < 0.0) {
    throw std::invalid_argument("spatial frequencies must be >= 0");
  }
  if (trials_per_cell < 1) throw std::invalid_argument("trials_per_cell must be >= 1");
  if (cycles_per_trial < 1) throw std::invalid_argument("cycles_per_trial must be >= 1");
  if (!(temporal_frequency > 0.0)) {
    throw std::invalid_argument("temporal_frequency must be positive");
  }
  if (steps_per_cycle < 200) throw std::invalid_argument("steps_per_cycle must be >= 200");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  morphology.validate();
  calibration.validate();
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t xi_index, std::size_t trial) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(xi_index) << 32) ^
                                      static_cast<std::uint64_t>(trial)));
}

BehaviorDiagram run_sweep(const SweepSpec& spec) {
  spec.validate();
  BehaviorDiagram diagram;
  diagram.spec = spec;
  diagram.amplitudes = spec.amplitude.values();
  // Joint-limit clamp: rounding in the grid must not push past pi/2.
  for (double& a : diagram.amplitudes) a = std::min(a, GaitParams::kMaxAmplitude);
  diagram.spatial_frequencies = spec.spatial_frequency.values();

  const auto landscape = energy_landscape(spec.morphology);
  const std::size_t nx = diagram.spatial_frequencies.size();
  const std::size_t total = diagram.amplitudes.size() * nx;
  diagram.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t ia = idx / nx;
      const std::size_t ix = idx % nx;
      diagram.cells[idx] = run_cell(spec, landscape, ia, ix, diagram.amplitudes[ia],
                                    diagram.spatial_frequencies[ix]);
    }
  };

  std::size_t threads = spec.threads > 0 ? static_cast<std::size_t>(spec.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return diagram;
}

double estimate_psr(std::span<const double> trial_rolls) {
  if (trial_rolls.empty()) throw std::invalid_argument("estimate_psr needs at least one trial");
  const double mean = std::accumulate(trial_rolls.begin(), trial_rolls.end(), 0.0) /
                      static_cast<double>(trial_rolls.size());
  return std::clamp(mean, 0.0, 1.0);
}

double binariness(const BehaviorDiagram& diagram) {
  std::size_t evaluated = 0;
  std::size_t intermediate = 0;
  for (const auto& cell : diagram.cells) {
    if (cell.failed() || std::isnan(cell.p_sr)) continue;
    ++evaluated;
    if (cell.p_sr > 0.2 && cell.p_sr < 0.8) ++intermediate;
  }
  if (evaluated == 0) throw std::invalid_argument("diagram has no evaluated cells");
  return static_cast<double>(intermediate) / static_cast<double>(evaluated);
}

void write_diagram_csv(std::ostream& out, const BehaviorDiagram& diagram,
                       const Provenance& provenance) {
  out << "# config_hash=" << provenance.config_hash << '\n';
  out << "# seed=" << provenance.seed << '\n';
  out << "A_rad,xi,trial,rolls_per_cycle,p_sr\n";
  for (const auto& cell : diagram.cells) {
    const std::string a = format_double(cell.amplitude);
    const std::string x = format_double(cell.spatial_frequency);
    for (std::size_t t = 0; t < cell.trial_rolls.size(); ++t) {
      out << a << ',' << x << ',' << t << ',' << format_double(cell.trial_rolls[t]) << ",\n";
    }
    out << a << ',' << x << ",all," << format_double(cell.mean_rolls_per_cycle) << ','
        << format_double(cell.p_sr) << '\n';
  }
}

void write_diagram_json(std::ostream& out, const BehaviorDiagram& diagram,
                        const Provenance& provenance) {
  const SweepSpec& spec = diagram.spec;
  nlohmann::json j;
  j["config_hash"] = provenance.config_hash;
  j["seed"] = provenance.seed;
  j["config"] = provenance.config_json.empty()
                    ? nlohmann::json(nullptr)
                    : nlohmann::json::parse(provenance.config_json);
  j["calibration"] = {{"coupling", spec.calibration.coupling},
                      {"drive_scale", spec.calibration.drive_scale},
                      {"contact_tolerance", spec.calibration.contact_tolerance}};
  j["morphology"] = morphology_json(spec.morphology);
  j["mode"] = std::string(to_string(spec.mode));
  j["trials_per_cell"] = spec.trials_per_cell;
  j["cycles_per_trial"] = spec.cycles_per_trial;
  j["perturbation"] = {{"initial_jitter", spec.perturbation.initial_jitter},
                       {"gain_noise", spec.perturbation.gain_noise}};
  j["amplitudes"] = diagram.amplitudes;
  j["spatial_frequencies"] = diagram.spatial_frequencies;

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : diagram.cells) {
    nlohmann::json c = {{"A_rad", cell.amplitude},
                        {"xi", cell.spatial_frequency},
                        {"trial_rolls_per_cycle", cell.trial_rolls},
                        {"mean_rolls_per_cycle", nullable(cell.mean_rolls_per_cycle)},
                        {"p_sr", nullable(cell.p_sr)}};
    if (cell.failed()) c["error"] = cell.error;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  const bool any_evaluated = std::any_of(diagram.cells.begin(), diagram.cells.end(),
                                         [](const CellResult& c) { return !c.failed(); });
  j["binariness"] = any_evaluated ? nlohmann::json(binariness(diagram)) : nlohmann::json(nullptr);
  out << j.dump(2) << '\n';
}

}  // namespace selfright
