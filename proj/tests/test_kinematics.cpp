#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "selfright/errors.hpp"
#include "selfright/kinematics.hpp"

namespace {

using namespace selfright;
constexpr double kPi = std::numbers::pi;

JointAngles zeros(const Morphology& m) {
  JointAngles q;
  q.lateral.assign(m.num_lateral_joints(), 0.0);
  q.vertical.assign(m.num_vertical_joints(), 0.0);
  return q;
}

JointAngles random_angles(const Morphology& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-kPi / 2, kPi / 2);
  JointAngles q = zeros(m);
  for (auto& a : q.lateral) a = d(rng);
  for (auto& a : q.vertical) a = d(rng);
  return q;
}

TEST(Morphology, DefaultLayout) {
  Morphology m;
  EXPECT_EQ(m.num_joints(), 9);
  EXPECT_EQ(m.num_lateral_joints(), 4);
  EXPECT_EQ(m.num_vertical_joints(), 5);
  EXPECT_DOUBLE_EQ(m.body_length(), 0.6);
  EXPECT_NO_THROW(m.check_compatible(GaitParams{}));
  GaitParams six;
  six.num_lateral_joints = 6;
  EXPECT_THROW(m.check_compatible(six), DimensionError);
}

TEST(Morphology, ValidationRejectsBadValues) {
  Morphology m;
  m.num_modules = 1;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = {};
  m.link_length = -0.06;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = {};
  m.leg_length = -0.01;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = {};
  m.leg_angle = kPi / 2;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(ForwardKinematics, StraightChain) {
  Morphology m;
  const auto poses = forward_kinematics(m, zeros(m));
  ASSERT_EQ(poses.size(), 10u);
  for (std::size_t k = 0; k < poses.size(); ++k) {
    EXPECT_NEAR(poses[k].position.x(), k * m.link_length, 1e-15);
    EXPECT_EQ(poses[k].position.y(), 0.0);
    EXPECT_EQ(poses[k].position.z(), 0.0);
    EXPECT_TRUE(poses[k].orientation.isIdentity());
  }
}

TEST(ForwardKinematics, PlanarConstantTurn) {
  Morphology m;
  m.link_length = 1.0;
  auto q = zeros(m);
  std::fill(q.lateral.begin(), q.lateral.end(), 0.3);
  const auto poses = forward_kinematics(m, q);
  const Eigen::Vector3d end = link_end(poses.back(), m.link_length);
  // tests/oracles/reference_values.py
  EXPECT_NEAR(end.x(), 7.529279653565244702, 1e-12);
  EXPECT_NEAR(end.y(), 5.1510573513021693409, 1e-12);
  EXPECT_NEAR(end.z(), 0.0, 1e-15);
  const auto h = poses.back().heading();
  EXPECT_NEAR(std::atan2(h.y(), h.x()), 4 * 0.3, 1e-12);
}

TEST(ForwardKinematics, PositivePitchLiftsDistalLink) {
  Morphology m;
  auto q = zeros(m);
  q.vertical[0] = 0.4;
  const auto poses = forward_kinematics(m, q);
  EXPECT_GT(poses[2].position.z(), 0.0);
  EXPECT_NEAR(poses[2].position.z(), m.link_length * std::sin(0.4), 1e-15);
}

TEST(ForwardKinematics, SizeMismatchThrows) {
  Morphology m;
  auto q = zeros(m);
  q.lateral.pop_back();
  EXPECT_THROW(forward_kinematics(m, q), DimensionError);
  q = zeros(m);
  q.vertical.push_back(0.0);
  EXPECT_THROW(forward_kinematics(m, q), DimensionError);
}

TEST(ForwardKinematics, BaseEquivariance) {
  Morphology m;
  std::mt19937_64 rng(3);
  const auto q = random_angles(m, rng);
  FramePose base;
  base.orientation =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  base.position = {0.1, -0.2, 0.3};
  const auto local = forward_kinematics(m, q);
  const auto moved = forward_kinematics(m, q, base);
  for (std::size_t k = 0; k < local.size(); ++k) {
    const Eigen::Vector3d expect = base.orientation * local[k].position + base.position;
    EXPECT_LT((moved[k].position - expect).norm(), 1e-14);
    EXPECT_LT((moved[k].orientation - base.orientation * local[k].orientation).norm(),
              1e-14);
  }
}

TEST(ForwardKinematicsProperty, ChainLengthAndOrthonormality) {
  std::mt19937_64 rng(11);
  Morphology m;
  for (int k = 0; k < 10000; ++k) {
    const auto poses = forward_kinematics(m, random_angles(m, rng));
    double length = 0.0;
    for (std::size_t i = 1; i < poses.size(); ++i) {
      length += (poses[i].position - poses[i - 1].position).norm();
    }
    ASSERT_NEAR(length, (m.num_modules - 1) * m.link_length, 1e-12);
    for (const auto& p : poses) ASSERT_NO_THROW(p.check_orthonormal(1e-9));
  }
}

TEST(FramePose, NonRotationRejected) {
  FramePose p;
  p.orientation(0, 0) = 1.1;
  EXPECT_THROW(p.check_orthonormal(), GeometryError);
  p.orientation = Eigen::Matrix3d::Identity();
  p.orientation(2, 2) = -1.0;  // reflection
  EXPECT_THROW(p.check_orthonormal(), GeometryError);
}

TEST(CenterOfMass, ReferenceCases) {
  Morphology one;
  one.num_modules = 2;
  one.link_length = 1.0;
  std::vector<FramePose> single(1);
  EXPECT_LT((center_of_mass(single, one) - Eigen::Vector3d(0.5, 0, 0)).norm(), 1e-15);

  Morphology m;
  const auto straight = forward_kinematics(m, zeros(m));
  EXPECT_NEAR(center_of_mass(straight, m).x(), m.body_length() / 2, 1e-15);

  // Two unit links at a right angle.
  std::vector<FramePose> bent(2);
  bent[1].position = {1, 0, 0};
  bent[1].orientation = Eigen::AngleAxisd(kPi / 2, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  const auto c = center_of_mass(bent, one);
  EXPECT_NEAR(c.x(), 0.75, 1e-15);
  EXPECT_NEAR(c.y(), 0.25, 1e-15);

  EXPECT_THROW(center_of_mass(std::vector<FramePose>{}, m), std::invalid_argument);
}

TEST(CrossSection, LimblessIsRegularPolygon) {
  Morphology m;
  m.leg_length = 0.0;
  const auto p = cross_section(m, 0.0);
  ASSERT_EQ(p.size(), static_cast<std::size_t>(Morphology::kBodyPolygonSides));
  for (const auto& v : p) EXPECT_NEAR(v.norm(), m.body_radius, 1e-15);
  const auto q = cross_section(m, 1.234);
  EXPECT_NEAR(polygon_area(p), polygon_area(q), 1e-18);
  EXPECT_GT(polygon_area(p), 0.0);  // counter-clockwise
}

TEST(CrossSection, LeggedExtentAndMirror) {
  Morphology m;
  const auto up = cross_section(m, 0.0);
  double lo = 1e9, hi = -1e9;
  for (const auto& v : up) {
    lo = std::min(lo, v.x());
    hi = std::max(hi, v.x());
  }
  EXPECT_NEAR(hi - lo, 2 * (0.03 + 0.11), 1e-15);

  // gamma = pi mirrors the section across the horizontal axis.
  const auto down = cross_section(m, kPi);
  for (const auto& v : up) {
    const Eigen::Vector2d mirrored(v.x(), -v.y());
    double best = 1e9;
    for (const auto& w : down) best = std::min(best, (w - mirrored).norm());
    EXPECT_LT(best, 1e-15);
  }
}

TEST(CrossSectionProperty, AreaInvariantUnderRoll) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> g(0.0, 2 * kPi);
  for (double L : {0.0, 0.02, 0.11, 0.3}) {
    Morphology m;
    m.leg_length = L;
    const double a0 = polygon_area(cross_section(m, 0.0));
    for (int k = 0; k < 200; ++k) {
      ASSERT_NEAR(polygon_area(cross_section(m, g(rng))), a0, 1e-12 * a0);
    }
  }
}

TEST(CrossSection, CentroidAtAxisForSymmetricLegs) {
  Morphology m;
  EXPECT_LT(polygon_centroid(cross_section(m, 0.8)).norm(), 1e-15);
}

TEST(SupportHeight, DiscOrLegTip) {
  Morphology m;
  EXPECT_DOUBLE_EQ(support_height(m, 0.0), m.body_radius);
  EXPECT_NEAR(support_height(m, kPi / 2), m.body_radius + m.leg_length, 1e-15);
  m.leg_length = 0.0;
  for (double g : {0.0, 0.5, 2.0, 4.0}) EXPECT_EQ(support_height(m, g), m.body_radius);
}

TEST(BodyWaveHeight, ReferenceCases) {
  Morphology m;
  EXPECT_EQ(body_wave_height(m, GaitParams::uniform(0.0, 0.0), 0.3), 0.0);
  GaitParams flat;
  flat.amplitude_vertical = 0.0;
  EXPECT_EQ(body_wave_height(m, flat, 0.3), 0.0);

  const auto p = GaitParams::uniform(kPi / 4, 0.0);
  const double peak = body_wave_height(m, p, 0.0);
  EXPECT_GT(peak, 0.0);
  for (int k = 1; k < 64; ++k) {
    EXPECT_LE(body_wave_height(m, p, p.period() * k / 64), peak + 1e-15);
  }
  EXPECT_GT(peak, body_wave_height(m, GaitParams::uniform(kPi / 12, 0.0), 0.0));
}

TEST(Morphology, ScaledMultipliesLengths) {
  const auto s = Morphology{}.scaled(2.0);
  EXPECT_DOUBLE_EQ(s.link_length, 0.12);
  EXPECT_DOUBLE_EQ(s.body_radius, 0.06);
  EXPECT_DOUBLE_EQ(s.leg_length, 0.22);
  EXPECT_EQ(s.module_mass, Morphology{}.module_mass);
}

}  // namespace
