#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>

#include "selfright/export.hpp"
#include "selfright/gait.hpp"
#include "selfright/rollmodel.hpp"
#include "selfright/sidewinding.hpp"
#include "selfright/sweep.hpp"

namespace selfright::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path write_file(const fs::path& dir, const char* name,
                    const std::function<void(std::ostream&)>& body) {
  fs::create_directories(dir);
  fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  body(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

json stamped(const Provenance& p) {
  return {{"config_hash", p.config_hash},
          {"seed", p.seed},
          {"config", json::parse(p.config_json)}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

Paths run_gait(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto prov = provenance_of(config);
  const auto& g = config.gait;
  auto csv = write_file(out_dir, "gait.csv", [&](std::ostream& out) {
    out << "# config_hash=" << prov.config_hash << '\n';
    out << "# seed=" << prov.seed << '\n';
    out << "time_s,joint,axis,angle_rad\n";
    for (int s = 0; s < config.gait_samples; ++s) {
      double t = g.period() * s / config.gait_samples;
      auto q = joint_vector(g, t);
      // Chain numbering: vertical joint j is joint 2j-1, lateral i is 2i.
      for (int j = 1; j <= g.num_vertical_joints(); ++j) {
        out << format_double(t) << ',' << 2 * j - 1 << ",vertical,"
            << format_double(q.vertical[j - 1]) << '\n';
        if (j <= g.num_lateral_joints) {
          out << format_double(t) << ',' << 2 * j << ",lateral,"
              << format_double(q.lateral[j - 1]) << '\n';
        }
      }
    }
  });
  return {csv};
}

Paths run_energy(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto prov = provenance_of(config);
  auto land = energy_landscape(config.morphology, config.energy_resolution);
  auto csv = write_file(out_dir, "energy.csv",
                        [&](std::ostream& out) { write_landscape_csv(out, land, prov); });
  auto summary = stamped(prov);
  summary["resolution"] = land.resolution();
  summary["minima_rad"] = land.minima;
  summary["num_stable"] = land.minima.size();
  summary["barrier_J"] = land.barrier;
  summary["max_slope_N_m"] = land.max_slope();
  summary["mean_energy_J"] = land.mean_energy();
  auto js = write_file(out_dir, "energy.json",
                       [&](std::ostream& out) { write_json(out, summary); });
  return {csv, js};
}

Paths run_simulate(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto prov = provenance_of(config);
  RollState init;
  init.gamma = config.simulation.initial_gamma;
  auto traj = simulate_roll(config.gait, config.morphology,
                            config.simulation_options(), init);
  auto outcome = classify_trial(traj);

  auto csv = write_file(out_dir, "trajectory.csv",
                        [&](std::ostream& out) { write_trajectory_csv(out, traj, prov); });
  auto summary = stamped(prov);
  summary["mode"] = std::string(to_string(traj.mode));
  summary["cycles"] = traj.cycles;
  summary["period_s"] = traj.period;
  summary["drive_gain_N_m"] = traj.drive_gain;
  summary["delta_gamma_per_cycle_rad"] = traj.delta_gamma_per_cycle;
  summary["total_delta_gamma_rad"] = traj.total_delta_gamma();
  summary["self_righted"] = outcome.self_righted;
  summary["rolls_per_cycle"] = outcome.rolls_per_cycle;
  summary["stalled"] = outcome.stalled;
  if (traj.mode == RollMode::kSegmented) {
    json crossings = json::array();
    for (const auto& c : traj.crossing_times(std::numbers::pi)) {
      crossings.push_back(c ? json(*c) : json(nullptr));
    }
    summary["half_turn_crossing_s"] = crossings;
  }
  auto js = write_file(out_dir, "simulate.json",
                       [&](std::ostream& out) { write_json(out, summary); });
  return {csv, js};
}

Paths run_sweep(const RunConfig& config, const fs::path& out_dir, int threads) {
  config.validate();
  const auto prov = provenance_of(config);
  auto diagram = run_sweep(config.sweep_spec(threads));
  auto csv = write_file(out_dir, "diagram.csv",
                        [&](std::ostream& out) { write_diagram_csv(out, diagram, prov); });
  auto js = write_file(out_dir, "diagram.json",
                       [&](std::ostream& out) { write_diagram_json(out, diagram, prov); });
  return {csv, js};
}

Paths run_sidewind(const RunConfig& config, const fs::path& out_dir) {
  config.validate();
  const auto prov = provenance_of(config);
  auto report = lateral_displacement(config.gait, config.morphology,
                                     config.sidewind.cycles, config.sidewind_options());
  auto csv = write_file(out_dir, "sidewind.csv",
                        [&](std::ostream& out) { write_body_path_csv(out, report, prov); });
  auto summary = stamped(prov);
  summary["cycles"] = report.cycles;
  summary["lateral_displacement_bl_per_cycle"] = number_or_null(report.lateral_displacement);
  summary["signed_lateral_bl_per_cycle"] = number_or_null(report.signed_lateral);
  summary["axial_displacement_bl_per_cycle"] = number_or_null(report.axial_displacement);
  summary["contact_fraction"] = report.contact_fraction;
  auto js = write_file(out_dir, "sidewind.json",
                       [&](std::ostream& out) { write_json(out, summary); });
  return {csv, js};
}

}  // namespace selfright::cli
