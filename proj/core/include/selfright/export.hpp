#pragma once

#include <iosfwd>

#include "selfright/provenance.hpp"
#include "selfright/rollmodel.hpp"

namespace selfright {

// time_s,gamma_rad[,gamma_1_rad..gamma_M_rad]. gamma_rad is the body roll;
// per-module columns appear in segmented mode.
void write_trajectory_csv(std::ostream& out, const RollTrajectory& traj,
                          const Provenance& provenance);

// gamma_rad,energy_J followed by '#' summary lines for minima and barrier.
void write_landscape_csv(std::ostream& out, const EnergyLandscape& landscape,
                         const Provenance& provenance);

}  // namespace selfright
