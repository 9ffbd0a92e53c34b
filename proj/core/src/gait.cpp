#include "selfright/gait.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace selfright {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wave_phase(const GaitParams& p, double t, int index) {
  return p.temporal_frequency * t +
         kTwoPi * p.spatial_frequency * index / p.num_lateral_joints;
}

}  // namespace

void GaitParams::validate() const {
  auto check_amplitude = [](double a, const char* name) {
    if (!(a >= 0.0 && a <= kMaxAmplitude)) {
      throw std::invalid_argument(std::string(name) +
                                  " must lie in [0, pi/2], got " +
                                  std::to_string(a));
    }
  };
  check_amplitude(amplitude_lateral, "amplitude_lateral");
  check_amplitude(amplitude_vertical, "amplitude_vertical");
  if (!(temporal_frequency > 0.0) || !std::isfinite(temporal_frequency)) {
    throw std::invalid_argument("temporal_frequency must be positive");
  }
  if (!(spatial_frequency >= 0.0) || !std::isfinite(spatial_frequency)) {
    throw std::invalid_argument("spatial_frequency must be non-negative");
  }
  if (num_lateral_joints < 1) {
    throw std::invalid_argument("num_lateral_joints must be >= 1");
  }
}

GaitParams GaitParams::uniform(double amplitude, double spatial_frequency,
                               int num_lateral_joints,
                               double temporal_frequency) {
  GaitParams p;
  p.amplitude_lateral = amplitude;
  p.amplitude_vertical = amplitude;
  p.spatial_frequency = spatial_frequency;
  p.num_lateral_joints = num_lateral_joints;
  p.temporal_frequency = temporal_frequency;
  return p;
}

double rolling_lateral_angle(double amplitude, double omega, double t) {
  return amplitude * std::sin(omega * t);
}

double rolling_vertical_angle(double amplitude, double omega, double t) {
  return amplitude * std::cos(omega * t);
}

double lateral_angle(const GaitParams& params, double t, int index) {
  if (index < 1 || index > params.num_lateral_joints) {
    throw std::out_of_range("lateral joint index " + std::to_string(index) +
                            " outside 1.." +
                            std::to_string(params.num_lateral_joints));
  }
  return params.amplitude_lateral * std::sin(wave_phase(params, t, index));
}

double vertical_angle(const GaitParams& params, double t, int index) {
  if (index < 1 || index > params.num_vertical_joints()) {
    throw std::out_of_range("vertical joint index " + std::to_string(index) +
                            " outside 1.." +
                            std::to_string(params.num_vertical_joints()));
  }
  return params.amplitude_vertical * std::cos(wave_phase(params, t, index));
}

JointAngles joint_vector(const GaitParams& params, double t) {
  params.validate();
  JointAngles out;
  out.time = t;
  out.lateral.reserve(params.num_lateral_joints);
  out.vertical.reserve(params.num_vertical_joints());
  for (int i = 1; i <= params.num_lateral_joints; ++i) {
    out.lateral.push_back(lateral_angle(params, t, i));
  }
  for (int j = 1; j <= params.num_vertical_joints(); ++j) {
    out.vertical.push_back(vertical_angle(params, t, j));
  }
  return out;
}

double phase_lag(const GaitParams& params) {
  params.validate();
  return kTwoPi * params.spatial_frequency / params.num_lateral_joints;
}

}  // namespace selfright
