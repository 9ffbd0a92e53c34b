#pragma once

#include <numbers>
#include <vector>

namespace selfright {

// Two-wave gait: a lateral sine wave and a vertical cosine wave travelling
// along the joint chain. Lateral joints are indexed 1..N, vertical joints
// 1..N+1; both use the same per-joint phase lag 2*pi*xi/N.
struct GaitParams {
  double amplitude_lateral = std::numbers::pi / 4;   // rad
  double amplitude_vertical = std::numbers::pi / 4;  // rad
  double temporal_frequency = 1.0;                   // omega, rad/s
  double spatial_frequency = 0.0;                    // xi
  int num_lateral_joints = 4;                        // N

  static constexpr double kMaxAmplitude = std::numbers::pi / 2;

  int num_vertical_joints() const { return num_lateral_joints + 1; }
  double period() const { return 2 * std::numbers::pi / temporal_frequency; }

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  // Single-amplitude form.
  static GaitParams uniform(double amplitude, double spatial_frequency,
                            int num_lateral_joints = 4,
                            double temporal_frequency = 1.0);

  bool operator==(const GaitParams&) const = default;
};

struct JointAngles {
  std::vector<double> lateral;   // alpha_l(t, i), i = 1..N
  std::vector<double> vertical;  // alpha_v(t, j), j = 1..N+1
  double time = 0.0;
};

// Rolling gait: every lateral joint at A sin(wt), every vertical joint at
// A cos(wt).
double rolling_lateral_angle(double amplitude, double omega, double t);
double rolling_vertical_angle(double amplitude, double omega, double t);

// Travelling-wave gait. `index` is 1-based; throws std::out_of_range.
double lateral_angle(const GaitParams& params, double t, int index);
double vertical_angle(const GaitParams& params, double t, int index);

JointAngles joint_vector(const GaitParams& params, double t);

// Phase lag between adjacent joints of the same axis, 2*pi*xi/N.
double phase_lag(const GaitParams& params);

}  // namespace selfright
