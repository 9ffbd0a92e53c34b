#include "selfright/sidewinding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "selfright/errors.hpp"

namespace selfright {
namespace {

struct Planar {
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Eigen::Vector2d apply(const Eigen::Vector2d& p) const { return rotation * p + translation; }
};

Eigen::Matrix2d rotation2d(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

// Least-squares rigid motion taking `body` onto `world`.
Planar fit_rigid(const std::vector<Eigen::Vector2d>& body,
                 const std::vector<Eigen::Vector2d>& world,
                 const Eigen::Matrix2d& fallback_rotation) {
  Eigen::Vector2d pc = Eigen::Vector2d::Zero();
  Eigen::Vector2d qc = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < body.size(); ++i) {
    pc += body[i];
    qc += world[i];
  }
  pc /= static_cast<double>(body.size());
  qc /= static_cast<double>(body.size());

  Planar out;
  if (body.size() == 1) {
    // A single anchor pins position only; heading carries over.
    out.rotation = fallback_rotation;
  } else {
    double sin_sum = 0.0;
    double cos_sum = 0.0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const Eigen::Vector2d p = body[i] - pc;
      const Eigen::Vector2d q = world[i] - qc;
      sin_sum += p.x() * q.y() - p.y() * q.x();
      cos_sum += p.dot(q);
    }
    out.rotation = rotation2d(std::atan2(sin_sum, cos_sum));
  }
  out.translation = qc - out.rotation * pc;
  return out;
}

// Principal axis of the points, oriented from the first toward the last.
Eigen::Vector2d body_axis(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d c = Eigen::Vector2d::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::Matrix2d scatter = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) scatter += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(scatter);
  Eigen::Vector2d axis = eig.eigenvectors().col(1);
  if (axis.dot(pts.back() - pts.front()) < 0.0) axis = -axis;
  return axis;
}

}  // namespace

void SidewindOptions::validate() const {
  if (!(contact_tolerance >= 0.0)) throw std::invalid_argument("contact_tolerance must be >= 0");
  if (samples_per_cycle < 8) throw std::invalid_argument("samples_per_cycle must be >= 8");
}

std::vector<std::size_t> contact_set(std::span<const FramePose> poses,
                                     const Morphology& morph, double tolerance) {
  if (poses.empty()) throw ContactError("no poses to test for contact");
  const double depth = support_height(morph, 0.0);
  std::vector<double> lowest(poses.size());
  for (std::size_t k = 0; k < poses.size(); ++k) {
    const double z0 = poses[k].position.z();
    const double z1 = link_end(poses[k], morph.link_length).z();
    lowest[k] = std::min(z0, z1) - depth;
  }
  const double floor = *std::min_element(lowest.begin(), lowest.end());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < lowest.size(); ++k) {
    if (lowest[k] <= floor + tolerance) out.push_back(k);
  }
  if (out.empty()) throw ContactError("no module within contact tolerance of the floor");
  return out;
}

std::vector<FramePose> sidewinding_posture(const Morphology& morph,
                                           const JointAngles& angles) {
  JointAngles planar = angles;
  std::fill(planar.vertical.begin(), planar.vertical.end(), 0.0);
  auto poses = forward_kinematics(morph, planar);
  for (std::size_t k = 0; k < poses.size(); ++k) {
    // Module k+1 shares vertical joint ceil((k+1)/2) with its neighbour.
    const std::size_t joint = std::min(k / 2, angles.vertical.size() - 1);
    poses[k].position.z() = -0.5 * morph.link_length * std::sin(angles.vertical[joint]);
  }
  return poses;
}

DisplacementReport lateral_displacement(const GaitParams& params,
                                        const Morphology& morph, int cycles,
                                        const SidewindOptions& options) {
  params.validate();
  morph.check_compatible(params);
  return lateral_displacement([&](double t) { return joint_vector(params, t); },
                              params.period(), morph, cycles, options);
}

DisplacementReport lateral_displacement(const JointAngleSource& source,
                                        double period, const Morphology& morph,
                                        int cycles, const SidewindOptions& options) {
  morph.validate();
  options.validate();
  if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  if (!(period > 0.0)) throw std::invalid_argument("period must be positive");

  const std::size_t samples = static_cast<std::size_t>(options.samples_per_cycle) * cycles;
  const std::size_t modules = static_cast<std::size_t>(morph.num_modules);

  DisplacementReport report;
  report.cycles = cycles;
  report.path.reserve(samples + 1);

  Planar world;
  std::vector<Eigen::Vector2d> previous_body;
  std::vector<Eigen::Vector2d> body(modules);
  std::vector<Eigen::Vector2d> placed(modules);
  Eigen::Vector2d accumulated = Eigen::Vector2d::Zero();  // (axial, lateral)
  Eigen::Vector2d last_com = Eigen::Vector2d::Zero();
  Eigen::Vector2d last_axis = Eigen::Vector2d::UnitX();
  double contact_sum = 0.0;

  for (std::size_t s = 0; s <= samples; ++s) {
    const double t = period * static_cast<double>(s) / options.samples_per_cycle;
    const auto poses = sidewinding_posture(morph, source(t));
    const auto contacts = contact_set(poses, morph, options.contact_tolerance);
    for (std::size_t k = 0; k < modules; ++k) {
      body[k] = link_midpoint(poses[k], morph.link_length).head<2>();
    }

    if (s > 0) {
      std::vector<Eigen::Vector2d> from;
      std::vector<Eigen::Vector2d> to;
      for (std::size_t k : contacts) {
        from.push_back(body[k]);
        to.push_back(world.apply(previous_body[k]));
      }
      world = fit_rigid(from, to, world.rotation);
    }
    previous_body = body;

    Eigen::Vector2d com = Eigen::Vector2d::Zero();
    for (std::size_t k = 0; k < modules; ++k) {
      placed[k] = world.apply(body[k]);
      com += placed[k];
    }
    com /= static_cast<double>(modules);
    const Eigen::Vector2d axis = body_axis(placed);

    if (s > 0) {
      Eigen::Vector2d mid = last_axis + axis;
      mid = mid.norm() > 0.0 ? mid.normalized() : axis;
      const Eigen::Vector2d normal(-mid.y(), mid.x());
      const Eigen::Vector2d d = com - last_com;
      accumulated += Eigen::Vector2d(d.dot(mid), d.dot(normal));
      contact_sum += static_cast<double>(contacts.size()) / static_cast<double>(modules);
    }
    last_com = com;
    last_axis = axis;

    report.path.push_back({t, com.x(), com.y(), std::atan2(axis.y(), axis.x()),
                           static_cast<int>(contacts.size())});
  }

  const double scale = morph.body_length() * cycles;
  report.axial_displacement = accumulated.x() / scale;
  report.signed_lateral = accumulated.y() / scale;
  report.lateral_displacement = std::abs(report.signed_lateral);
  report.contact_fraction = contact_sum / static_cast<double>(samples);
  return report;
}

void write_body_path_csv(std::ostream& out, const DisplacementReport& report,
                         const Provenance& provenance) {
  out << "# config_hash=" << provenance.config_hash << '\n';
  out << "# seed=" << provenance.seed << '\n';
  out << "time_s,x_m,y_m,heading_rad,contacts\n";
  for (const auto& s : report.path) {
    out << format_double(s.time) << ',' << format_double(s.x) << ',' << format_double(s.y)
        << ',' << format_double(s.heading) << ',' << s.contacts << '\n';
  }
}

}  // namespace selfright
