#include "selfright/rollmodel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "selfright/errors.hpp"

namespace selfright {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Uniform double in [-1, 1) from the top 53 bits of a 64-bit draw.
double symmetric_unit(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

// Follows the sign of `force` from x until it changes sign, then closes in
// on the crossing. Forward motion stops at `upper`.
template <class Force>
double relax_1d(const Force& force, double x, double upper, double max_step,
                int max_marches) {
  x = std::min(x, upper);
  double f = force(x);
  if (f == 0.0 || (f > 0.0 && x >= upper)) return x;
  const bool forward = f > 0.0;
  for (int i = 0; i < max_marches; ++i) {
    double next = forward ? x + max_step : x - max_step;
    if (forward && next >= upper) next = upper;
    const double fn = force(next);
    if (fn == 0.0) return next;
    if ((fn > 0.0) != forward) {
      // Illinois false position on the bracket; the force is smooth inside
      // a grid cell, so this converges in a few evaluations.
      double lo = x, f_lo = f;  // force keeps the starting sign at lo
      double hi = next, f_hi = fn;
      int side = 0;
      for (int k = 0; k < 100 && std::abs(hi - lo) > 1e-13; ++k) {
        double mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) mid = 0.5 * (lo + hi);
        const double fm = force(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == forward) {
          lo = mid, f_lo = fm;
          if (side == -1) f_hi *= 0.5;
          side = -1;
        } else {
          hi = mid, f_hi = fm;
          if (side == 1) f_lo *= 0.5;
          side = 1;
        }
      }
      return 0.5 * (lo + hi);
    }
    if (next == upper) return upper;
    x = next;
  }
  return x;
}

void check_finite(const std::vector<double>& values, std::size_t step) {
  for (double v : values) {
    if (!std::isfinite(v)) throw IntegrationError("non-finite roll state", step);
  }
}

bool detect_stall(const RollTrajectory& traj) {
  if (traj.time.size() < 2 || traj.period <= 0.0) return false;
  const double quarter = 0.25 * traj.period;
  double run_start = traj.time.front();
  bool in_run = false;
  for (std::size_t n = 1; n < traj.time.size(); ++n) {
    const double dt = traj.time[n] - traj.time[n - 1];
    if (dt <= 0.0) continue;
    const double rate = std::abs(traj.body_gamma(n) - traj.body_gamma(n - 1)) / dt;
    if (rate < kStallRate) {
      if (!in_run) {
        in_run = true;
        run_start = traj.time[n - 1];
      }
      if (traj.time[n] - run_start >= quarter * (1.0 - 1e-12)) return true;
    } else {
      in_run = false;
    }
  }
  return false;
}

}  // namespace

double EnergyLandscape::step() const {
  return gamma.empty() ? 0.0 : kTwoPi / static_cast<double>(gamma.size());
}

double EnergyLandscape::energy_at(double g) const {
  const double x = wrap_angle(g) / step();
  const auto n = energy.size();
  const auto i = static_cast<std::size_t>(x) % n;
  const double f = x - std::floor(x);
  return energy[i] * (1.0 - f) + energy[(i + 1) % n] * f;
}

double EnergyLandscape::slope_at(double g) const {
  const double x = wrap_angle(g) / step();
  return slope_[static_cast<std::size_t>(x) % slope_.size()];
}

double EnergyLandscape::max_slope() const {
  double m = 0.0;
  for (double s : slope_) m = std::max(m, std::abs(s));
  return m;
}

double EnergyLandscape::mean_energy() const {
  return std::accumulate(energy.begin(), energy.end(), 0.0) /
         static_cast<double>(energy.size());
}

EnergyLandscape landscape_from_samples(std::vector<double> energy) {
  if (energy.size() < 3) throw GeometryError("landscape needs at least 3 samples");
  for (double e : energy) {
    if (!std::isfinite(e)) throw GeometryError("non-finite landscape sample");
  }
  EnergyLandscape out;
  const std::size_t n = energy.size();
  out.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.gamma[i] = kTwoPi * i / n;
  out.energy = std::move(energy);

  const double h = out.step();
  out.slope_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.slope_[i] = (out.energy[(i + 1) % n] - out.energy[i]) / h;
  }

  out.minima = stable_configurations(out);

  const double start = out.energy_at(kPi);
  double peak = start;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.gamma[i] >= kPi) peak = std::max(peak, out.energy[i]);
  }
  peak = std::max(peak, out.energy.front());  // gamma = 2pi
  out.barrier = peak - start;
  return out;
}

EnergyLandscape energy_landscape(const Morphology& morph, int resolution) {
  morph.validate();
  if (resolution < 64) throw std::invalid_argument("landscape resolution must be >= 64");
  if (!(std::abs(polygon_area(cross_section(morph, 0.0))) > 0.0)) {
    throw GeometryError("cross-section polygon is degenerate");
  }
  const double weight = morph.total_mass() * kGravity;
  std::vector<double> energy(resolution);
  for (int i = 0; i < resolution; ++i) {
    energy[i] = weight * support_height(morph, kTwoPi * i / resolution);
  }
  return landscape_from_samples(std::move(energy));
}

std::vector<double> stable_configurations(const EnergyLandscape& landscape) {
  const auto& u = landscape.energy;
  const std::size_t n = u.size();
  std::vector<double> minima;
  if (n < 3) return minima;

  double scale = 0.0;
  for (double e : u) scale = std::max(scale, std::abs(e));
  const double tol = 1e-12 * std::max(scale, 1e-300);
  auto same = [&](std::size_t a, std::size_t b) { return std::abs(u[a] - u[b]) <= tol; };

  // Start scanning just after a sample that differs from its successor so
  // that no plateau wraps around the scan origin.
  std::size_t origin = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!same(i, (i + 1) % n)) {
      origin = (i + 1) % n;
      break;
    }
  }
  if (origin == n) return minima;  // flat everywhere

  std::size_t k = 0;
  while (k < n) {
    const std::size_t first = (origin + k) % n;
    std::size_t len = 1;
    while (len < n && same(first, (first + len) % n)) ++len;
    const std::size_t before = (first + n - 1) % n;
    const std::size_t after = (first + len) % n;
    if (u[before] > u[first] + tol && u[after] > u[first] + tol) {
      const double mid = static_cast<double>(first) + 0.5 * static_cast<double>(len - 1);
      minima.push_back(wrap_angle(mid * landscape.step()));
    }
    k += len;
  }
  std::sort(minima.begin(), minima.end());
  return minima;
}

void Calibration::validate() const {
  if (!(coupling >= 0.0)) throw std::invalid_argument("coupling must be >= 0");
  if (!(drive_scale >= 0.0)) throw std::invalid_argument("drive_scale must be >= 0");
  if (!(contact_tolerance >= 0.0)) {
    throw std::invalid_argument("contact_tolerance must be >= 0");
  }
}

double coherence(double spatial_frequency, int num_lateral_joints) {
  if (num_lateral_joints < 1) throw std::invalid_argument("need at least one lateral joint");
  std::complex<double> sum{0.0, 0.0};
  for (int i = 1; i <= num_lateral_joints; ++i) {
    sum += std::polar(1.0, kTwoPi * spatial_frequency * i / num_lateral_joints);
  }
  const double c = std::abs(sum) / num_lateral_joints;
  return c < 1e-12 ? 0.0 : std::min(c, 1.0);
}

double wave_lift(const Morphology& morph, const GaitParams& params) {
  return morph.num_vertical_joints() * morph.link_length *
         std::sin(params.amplitude_vertical);
}

double segment_drive_gain(const GaitParams& params, const Morphology& morph,
                          const Calibration& calib) {
  params.validate();
  morph.validate();
  morph.check_compatible(params);
  return calib.drive_scale * morph.total_mass() * kGravity *
         0.5 * wave_lift(morph, params);
}

double drive_gain(const GaitParams& params, const Morphology& morph,
                  const Calibration& calib) {
  return segment_drive_gain(params, morph, calib) *
         coherence(params.spatial_frequency, params.num_lateral_joints);
}

double roll_drive(const GaitParams& params, const Morphology& morph, double t,
                  double gamma, const Calibration& calib) {
  return drive_gain(params, morph, calib) *
         std::sin(params.temporal_frequency * t - gamma);
}

std::string_view to_string(RollMode mode) {
  return mode == RollMode::kLumped ? "lumped" : "segmented";
}

RollMode parse_roll_mode(std::string_view text) {
  if (text == "lumped") return RollMode::kLumped;
  if (text == "segmented") return RollMode::kSegmented;
  throw std::invalid_argument("unknown roll mode '" + std::string(text) +
                              "' (expected lumped|segmented)");
}

void SimulationOptions::validate() const {
  if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  if (half_cycle && cycles != 1) {
    throw std::invalid_argument("half-cycle runs cover exactly one half cycle");
  }
  if (steps_per_cycle < 200) throw std::invalid_argument("steps_per_cycle must be >= 200");
  if (landscape_resolution < 64) {
    throw std::invalid_argument("landscape_resolution must be >= 64");
  }
  calibration.validate();
  if (!(perturbation.initial_jitter >= 0.0) || !(perturbation.gain_noise >= 0.0) ||
      perturbation.gain_noise >= 1.0) {
    throw std::invalid_argument("perturbation magnitudes must lie in [0, 1)");
  }
}

double RollTrajectory::body_gamma(std::size_t sample) const {
  const auto& row = gamma.at(sample);
  return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
}

double RollTrajectory::total_delta_gamma() const {
  return std::accumulate(delta_gamma_per_cycle.begin(), delta_gamma_per_cycle.end(), 0.0);
}

std::vector<std::optional<double>> RollTrajectory::crossing_times(double rise) const {
  std::vector<std::optional<double>> out(num_modules());
  if (gamma.empty()) return out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double target = gamma.front()[k] + rise;
    for (std::size_t n = 0; n < gamma.size(); ++n) {
      if (gamma[n][k] >= target) {
        out[k] = time[n];
        break;
      }
    }
  }
  return out;
}

RollTrajectory simulate_roll(const GaitParams& params, const Morphology& morph,
                             const SimulationOptions& options,
                             const RollState& init) {
  return simulate_roll(params, morph,
                       energy_landscape(morph, options.landscape_resolution),
                       options, init);
}

RollTrajectory simulate_roll(const GaitParams& params, const Morphology& morph,
                             const EnergyLandscape& landscape,
                             const SimulationOptions& options,
                             const RollState& init) {
  params.validate();
  morph.validate();
  morph.check_compatible(params);
  options.validate();

  const bool segmented = options.mode == RollMode::kSegmented;
  const std::size_t modules = segmented ? static_cast<std::size_t>(morph.num_modules) : 1;
  const double omega = params.temporal_frequency;
  const double phase_per_cycle = options.half_cycle ? kPi : kTwoPi;
  const int steps = options.half_cycle ? options.steps_per_cycle / 2 : options.steps_per_cycle;
  const double march = 0.25 * landscape.step();
  const int max_marches = 4 * static_cast<int>(landscape.resolution()) + 16;

  std::mt19937_64 rng(options.perturbation.seed);
  const double jitter = options.perturbation.initial_jitter * symmetric_unit(rng);
  const double gain_factor = 1.0 + options.perturbation.gain_noise * symmetric_unit(rng);

  const Calibration& calib = options.calibration;
  const double lumped_gain = drive_gain(params, morph, calib) * gain_factor;
  // Per-module share of the drive; module phases are explicit, so the
  // coherence factor is not applied.
  const double module_gain =
      segment_drive_gain(params, morph, calib) * gain_factor / morph.num_modules;
  const double module_weight = 1.0 / morph.num_modules;
  const double kappa = calib.coupling;

  // The travelling wave moves toward joint 1, so the head (module M) leads
  // and module k starts rolling once the wave has covered the distance.
  std::vector<double> onset(modules, 0.0);
  if (segmented) {
    const double per_module = kTwoPi * params.spatial_frequency /
                              (2.0 * params.num_lateral_joints);
    for (std::size_t k = 0; k < modules; ++k) {
      onset[k] = per_module * static_cast<double>(modules - 1 - k);
    }
  }

  // The gait starts wherever the body landed: the commanded roll is
  // measured from the (jittered) initial pose.
  const double start = init.gamma + jitter;
  auto commanded = [&](std::size_t k, double phase) {
    return start + std::max(0.0, phase - onset[k]);
  };

  std::vector<double> gamma(modules, start);

  auto relax_lumped = [&](double phi) {
    auto force = [&](double g) {
      return lumped_gain * std::sin(phi - g) - landscape.slope_at(g);
    };
    gamma[0] = relax_1d(force, gamma[0], phi, march, max_marches);
  };

  std::vector<double> phis(modules);
  auto relax_segmented = [&](double phase) {
    for (std::size_t k = 0; k < modules; ++k) phis[k] = commanded(k, phase);
    for (int sweep = 0; sweep < 4000; ++sweep) {
      double change = 0.0;
      for (std::size_t k = 0; k < modules; ++k) {
        double neighbours = 0.0;
        int count = 0;
        if (k > 0) neighbours += gamma[k - 1], ++count;
        if (k + 1 < modules) neighbours += gamma[k + 1], ++count;
        const double phi = phis[k];
        auto force = [&](double g) {
          return module_gain * std::sin(phi - g) -
                 module_weight * landscape.slope_at(g) +
                 kappa * (neighbours - count * g);
        };
        const double updated = relax_1d(force, gamma[k], phi, march, max_marches);
        change = std::max(change, std::abs(updated - gamma[k]));
        gamma[k] = updated;
      }
      // Coarse correction: stiff coupling makes Gauss-Seidel crawl along the
      // rigid mode, so relax a common shift under the summed external force
      // (the coupling cancels in the sum).
      double headroom = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < modules; ++k) {
        headroom = std::min(headroom, phis[k] - gamma[k]);
      }
      auto total = [&](double shift) {
        double f = 0.0;
        for (std::size_t k = 0; k < modules; ++k) {
          const double g = gamma[k] + shift;
          f += module_gain * std::sin(phis[k] - g) - module_weight * landscape.slope_at(g);
        }
        return f;
      };
      const double shift = relax_1d(total, 0.0, std::max(headroom, 0.0), march, max_marches);
      for (auto& g : gamma) g += shift;
      change = std::max(change, std::abs(shift));
      if (change < 1e-10) break;
    }
  };

  auto relax = [&](double phase) {
    if (segmented) {
      relax_segmented(phase);
    } else {
      relax_lumped(commanded(0, phase));
    }
  };

  RollTrajectory traj;
  traj.mode = options.mode;
  traj.cycles = options.cycles;
  traj.period = params.period();
  traj.phase_per_cycle = phase_per_cycle;
  traj.drive_gain = segmented ? module_gain * morph.num_modules : lumped_gain;
  const std::size_t total_steps = static_cast<std::size_t>(steps) * options.cycles;
  traj.time.reserve(total_steps + 1);
  traj.gamma.reserve(total_steps + 1);

  // Settle into the equilibrium nearest the (jittered) landing pose.
  relax(0.0);
  check_finite(gamma, 0);
  traj.time.push_back(init.time);
  traj.gamma.push_back(gamma);

  auto body = [&]() {
    return std::accumulate(gamma.begin(), gamma.end(), 0.0) / static_cast<double>(modules);
  };
  double cycle_start = body();

  for (int c = 0; c < options.cycles; ++c) {
    for (int s = 1; s <= steps; ++s) {
      const double within = phase_per_cycle * s / steps;
      const double phase = kTwoPi * c + within;
      relax(phase);
      const std::size_t step_index = static_cast<std::size_t>(c) * steps + s;
      check_finite(gamma, step_index);
      traj.time.push_back(init.time + phase / omega);
      traj.gamma.push_back(gamma);
    }
    const double end = body();
    traj.delta_gamma_per_cycle.push_back(end - cycle_start);
    cycle_start = end;
  }
  return traj;
}

TrialOutcome classify_trial(const RollTrajectory& traj) {
  if (traj.delta_gamma_per_cycle.empty()) {
    throw std::invalid_argument("cannot classify an empty trajectory");
  }
  double mean = traj.total_delta_gamma() /
                static_cast<double>(traj.delta_gamma_per_cycle.size());
  if (std::abs(mean) < kRollResolution) mean = 0.0;
  TrialOutcome out;
  out.rolls_per_cycle = mean / kTwoPi;
  out.self_righted = mean >= kPi * (1.0 - 1e-9);
  out.stalled = detect_stall(traj);
  return out;
}

}  // namespace selfright
