#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "selfright/gait.hpp"

namespace selfright {

// Body and static-leg geometry of the modular chain. Modules are numbered
// 1..M from the chain base (tail) to the head; joint k joins module k and
// k+1, odd joints pitch (vertical), even joints yaw (lateral).
struct Morphology {
  int num_modules = 10;        // M
  double link_length = 0.06;   // m
  double body_radius = 0.03;   // m
  double leg_length = 0.11;    // m, tip to body surface; 0 = limbless
  double leg_angle = 0.0;      // rad below horizontal when upright
  double module_mass = 0.1;    // kg

  // Cross-section discretisation and leg plate width.
  static constexpr int kBodyPolygonSides = 64;
  static constexpr double kLegWidth = 0.002;

  void validate() const;

  int num_joints() const { return num_modules - 1; }
  int num_lateral_joints() const { return num_joints() / 2; }
  int num_vertical_joints() const { return num_joints() - num_lateral_joints(); }
  double body_length() const { return num_modules * link_length; }
  double total_mass() const { return num_modules * module_mass; }
  bool limbless() const { return leg_length == 0.0; }

  // Every length multiplied by `factor`.
  Morphology scaled(double factor) const;

  // Gait joint counts must agree with this chain.
  void check_compatible(const GaitParams& params) const;

  bool operator==(const Morphology&) const = default;
};

struct FramePose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();

  static FramePose identity() { return {}; }
  // Throws GeometryError unless the orientation is a proper rotation (1e-9).
  void check_orthonormal(double tolerance = 1e-9) const;
  Eigen::Vector3d heading() const { return orientation.col(0); }
};

using Polygon = std::vector<Eigen::Vector2d>;

// One frame per module, located at the module's proximal end with x along
// the link. Throws DimensionError if the angle vectors do not fit the chain.
std::vector<FramePose> forward_kinematics(const Morphology& morph,
                                          const JointAngles& angles,
                                          const FramePose& base = {});

Eigen::Vector3d link_midpoint(const FramePose& pose, double link_length);
Eigen::Vector3d link_end(const FramePose& pose, double link_length);

Eigen::Vector3d center_of_mass(std::span<const FramePose> poses,
                               const Morphology& morph);

// Transverse silhouette of one module rolled by `gamma`: the body disc as a
// regular polygon plus two thin triangular legs, counter-clockwise.
Polygon cross_section(const Morphology& morph, double gamma);

// Leg tip positions in the cross-section plane at roll `gamma`.
std::vector<Eigen::Vector2d> leg_tips(const Morphology& morph, double gamma);

// Height of the body axis above a flat floor the cross-section rests on.
// The body is treated as an exact disc so the limbless case is perfectly
// round; legs contribute through their tips.
double support_height(const Morphology& morph, double gamma);

double polygon_area(const Polygon& polygon);
Eigen::Vector2d polygon_centroid(const Polygon& polygon);

// Max minus min of module-origin heights at time t, chain base held flat.
double body_wave_height(const Morphology& morph, const GaitParams& params,
                        double t);

}  // namespace selfright
