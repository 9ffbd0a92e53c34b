#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "selfright/gait.hpp"
#include "selfright/kinematics.hpp"
#include "selfright/provenance.hpp"

namespace selfright {

struct BodySample {
  double time = 0.0;
  double x = 0.0;        // m, world centre of mass
  double y = 0.0;
  double heading = 0.0;  // rad, mean body axis (tail to head)
  int contacts = 0;
};

struct DisplacementReport {
  double lateral_displacement = 0.0;  // body lengths per cycle, >= 0
  double signed_lateral = 0.0;        // + toward the body's left
  double axial_displacement = 0.0;    // body lengths per cycle along the axis
  double contact_fraction = 0.0;      // time-averaged share of modules down
  int cycles = 0;
  std::vector<BodySample> path;
};

struct SidewindOptions {
  double contact_tolerance = 0.002;  // m
  int samples_per_cycle = 400;

  void validate() const;
};

// 0-based indices of modules whose lowest cross-section point lies within
// `tolerance` of the lowest point of the whole body.
std::vector<std::size_t> contact_set(std::span<const FramePose> poses,
                                     const Morphology& morph, double tolerance);

// Ground-plane posture for contact kinematics: the lateral wave shapes the
// chain in the plane, and each module sits lower the more its vertical
// joint bends the chain into a trough.
std::vector<FramePose> sidewinding_posture(const Morphology& morph,
                                           const JointAngles& angles);

using JointAngleSource = std::function<JointAngles(double t)>;

// Anchored-contact (no-slip) estimate of net translation. Between samples
// the body moves by the planar rigid motion that best keeps the contacting
// modules fixed; the centre-of-mass increments are accumulated in the body
// frame.
DisplacementReport lateral_displacement(const GaitParams& params,
                                        const Morphology& morph, int cycles,
                                        const SidewindOptions& options = {});

DisplacementReport lateral_displacement(const JointAngleSource& source,
                                        double period, const Morphology& morph,
                                        int cycles,
                                        const SidewindOptions& options = {});

// time_s,x_m,y_m,heading_rad,contacts with '#' provenance lines.
void write_body_path_csv(std::ostream& out, const DisplacementReport& report,
                         const Provenance& provenance);

}  // namespace selfright
