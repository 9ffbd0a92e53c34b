#include "selfright/kinematics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

#include "selfright/errors.hpp"

namespace selfright {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Shortest angular distance between two directions.
double angular_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

Eigen::Vector2d rotate(const Eigen::Vector2d& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Leg directions in the upright cross-section: right and left, mirrored
// about the vertical axis.
std::array<double, 2> leg_directions(const Morphology& morph) {
  return {-morph.leg_angle, std::numbers::pi + morph.leg_angle};
}

}  // namespace

void Morphology::validate() const {
  if (num_modules < 2) {
    throw std::invalid_argument("num_modules must be >= 2");
  }
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
  };
  non_negative(link_length, "link_length");
  non_negative(body_radius, "body_radius");
  non_negative(leg_length, "leg_length");
  non_negative(module_mass, "module_mass");
  if (!std::isfinite(leg_angle) || std::abs(leg_angle) >= std::numbers::pi / 2) {
    throw std::invalid_argument("leg_angle must lie in (-pi/2, pi/2)");
  }
}

Morphology Morphology::scaled(double factor) const {
  Morphology out = *this;
  out.link_length *= factor;
  out.body_radius *= factor;
  out.leg_length *= factor;
  return out;
}

void Morphology::check_compatible(const GaitParams& params) const {
  if (params.num_lateral_joints != num_lateral_joints() ||
      params.num_vertical_joints() != num_vertical_joints()) {
    throw DimensionError(
        "gait with " + std::to_string(params.num_lateral_joints) +
        " lateral joints does not fit a chain of " +
        std::to_string(num_modules) + " modules (" +
        std::to_string(num_lateral_joints()) + " lateral, " +
        std::to_string(num_vertical_joints()) + " vertical joints)");
  }
}

void FramePose::check_orthonormal(double tolerance) const {
  const double err =
      (orientation.transpose() * orientation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (err > tolerance || std::abs(orientation.determinant() - 1.0) > tolerance) {
    throw GeometryError("frame orientation is not a proper rotation");
  }
}

std::vector<FramePose> forward_kinematics(const Morphology& morph,
                                          const JointAngles& angles,
                                          const FramePose& base) {
  if (angles.lateral.size() != static_cast<std::size_t>(morph.num_lateral_joints()) ||
      angles.vertical.size() != static_cast<std::size_t>(morph.num_vertical_joints())) {
    throw DimensionError(
        "joint angles (" + std::to_string(angles.lateral.size()) + " lateral, " +
        std::to_string(angles.vertical.size()) + " vertical) do not fit a " +
        std::to_string(morph.num_modules) + "-module chain");
  }

  std::vector<FramePose> frames;
  frames.reserve(morph.num_modules);
  FramePose pose = base;
  frames.push_back(pose);
  for (int joint = 1; joint < morph.num_modules; ++joint) {
    pose.position += morph.link_length * pose.heading();
    Eigen::Matrix3d rot;
    if (joint % 2 == 1) {
      // Positive pitch lifts the distal link.
      const double a = angles.vertical[(joint + 1) / 2 - 1];
      rot = Eigen::AngleAxisd(-a, Eigen::Vector3d::UnitY()).toRotationMatrix();
    } else {
      const double a = angles.lateral[joint / 2 - 1];
      rot = Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    }
    pose.orientation = pose.orientation * rot;
    frames.push_back(pose);
  }
  return frames;
}

Eigen::Vector3d link_midpoint(const FramePose& pose, double link_length) {
  return pose.position + 0.5 * link_length * pose.heading();
}

Eigen::Vector3d link_end(const FramePose& pose, double link_length) {
  return pose.position + link_length * pose.heading();
}

Eigen::Vector3d center_of_mass(std::span<const FramePose> poses,
                               const Morphology& morph) {
  if (poses.empty()) {
    throw std::invalid_argument("center_of_mass needs at least one pose");
  }
  // Uniform module masses: the weighted mean reduces to a plain mean.
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const auto& p : poses) sum += link_midpoint(p, morph.link_length);
  return sum / static_cast<double>(poses.size());
}

std::vector<Eigen::Vector2d> leg_tips(const Morphology& morph, double gamma) {
  std::vector<Eigen::Vector2d> tips;
  if (morph.limbless()) return tips;
  const double reach = morph.body_radius + morph.leg_length;
  for (double dir : leg_directions(morph)) {
    tips.push_back(rotate({reach * std::cos(dir), reach * std::sin(dir)}, gamma));
  }
  return tips;
}

Polygon cross_section(const Morphology& morph, double gamma) {
  const int sides = Morphology::kBodyPolygonSides;
  const double r = morph.body_radius;

  struct Vertex {
    double angle;
    Eigen::Vector2d point;
  };
  std::vector<Vertex> vertices;
  vertices.reserve(sides + 6);

  const auto legs = leg_directions(morph);
  const double half_width =
      morph.limbless()
          ? 0.0
          : std::asin(std::min(1.0, 0.5 * Morphology::kLegWidth / r));

  for (int j = 0; j < sides; ++j) {
    const double a = kTwoPi * j / sides;
    bool covered = false;
    if (!morph.limbless()) {
      for (double dir : legs) covered |= angular_distance(a, dir) <= half_width;
    }
    if (!covered) vertices.push_back({a, {r * std::cos(a), r * std::sin(a)}});
  }

  if (!morph.limbless()) {
    const double reach = r + morph.leg_length;
    for (double dir : legs) {
      for (double a : {dir - half_width, dir + half_width}) {
        vertices.push_back({wrap_angle(a), {r * std::cos(a), r * std::sin(a)}});
      }
      vertices.push_back(
          {wrap_angle(dir), {reach * std::cos(dir), reach * std::sin(dir)}});
    }
  }

  // Star-shaped about the body axis, so angular order gives a simple polygon.
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.angle < b.angle; });

  Polygon out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(rotate(v.point, gamma));
  return out;
}

double support_height(const Morphology& morph, double gamma) {
  double h = morph.body_radius;
  for (const auto& tip : leg_tips(morph, gamma)) h = std::max(h, -tip.y());
  return h;
}

double polygon_area(const Polygon& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

Eigen::Vector2d polygon_centroid(const Polygon& polygon) {
  const double area = polygon_area(polygon);
  if (area == 0.0) throw GeometryError("polygon has zero area");
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % n];
    const double cross = a.x() * b.y() - b.x() * a.y();
    c += (a + b) * cross;
  }
  return c / (6.0 * area);
}

double body_wave_height(const Morphology& morph, const GaitParams& params,
                        double t) {
  morph.check_compatible(params);
  const auto frames = forward_kinematics(morph, joint_vector(params, t));
  double lo = frames.front().position.z();
  double hi = lo;
  for (const auto& f : frames) {
    lo = std::min(lo, f.position.z());
    hi = std::max(hi, f.position.z());
  }
  return hi - lo;
}

}  // namespace selfright
