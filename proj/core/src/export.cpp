#include "selfright/export.hpp"

#include <ostream>

namespace selfright {

void write_trajectory_csv(std::ostream& out, const RollTrajectory& traj,
                          const Provenance& provenance) {
  out << "# config_hash=" << provenance.config_hash << '\n';
  out << "# seed=" << provenance.seed << '\n';
  const bool per_module = traj.mode == RollMode::kSegmented;
  out << "time_s,gamma_rad";
  if (per_module) {
    for (std::size_t k = 1; k <= traj.num_modules(); ++k) out << ",gamma_" << k << "_rad";
  }
  out << '\n';
  for (std::size_t n = 0; n < traj.time.size(); ++n) {
    out << format_double(traj.time[n]) << ',' << format_double(traj.body_gamma(n));
    if (per_module) {
      for (double g : traj.gamma[n]) out << ',' << format_double(g);
    }
    out << '\n';
  }
}

void write_landscape_csv(std::ostream& out, const EnergyLandscape& landscape,
                         const Provenance& provenance) {
  out << "# config_hash=" << provenance.config_hash << '\n';
  out << "# seed=" << provenance.seed << '\n';
  out << "# barrier_J=" << format_double(landscape.barrier) << '\n';
  out << "# minima_rad=";
  for (std::size_t i = 0; i < landscape.minima.size(); ++i) {
    out << (i ? ";" : "") << format_double(landscape.minima[i]);
  }
  out << '\n';
  out << "gamma_rad,energy_J\n";
  for (std::size_t i = 0; i < landscape.resolution(); ++i) {
    out << format_double(landscape.gamma[i]) << ',' << format_double(landscape.energy[i])
        << '\n';
  }
}

}  // namespace selfright
