#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bricard/errors.hpp"
#include "bricard/geometry.hpp"
#include "bricard/palm.hpp"

namespace bricard {

/// A screw in Plucker (axis; moment) coordinates. Joint screws are lines:
/// unit direction with moment = point-on-axis x direction.
struct Screw {
  Vec3 direction;
  Vec3 moment;

  double pitch_residual() const { return direction.dot(moment); }
};

/// Klein form of two screws: a.s * b.s0 + b.s * a.s0. Zero means the wrench
/// does no work on the twist (reciprocal screws).
inline double reciprocal_product(const Screw& a, const Screw& b) {
  return a.direction.dot(b.moment) + b.direction.dot(a.moment);
}

/// The six joint screws of one palm pose, ordered (M1, M2, M3, N1, N2, N3),
/// together with the joint centers expressed in the M-triangle frame.
struct ScrewSystem {
  std::array<Screw, 6> joints;
  std::array<Vec3, 6> joint_points;
};

/// Joint centers in the frame whose origin is the M-triangle centroid and
/// whose x axis runs through M1. The M_i sit on the z = 0 circle of radius L1
/// at azimuths {0, 2pi/3, -2pi/3}; the N_i sit on the z = L3 circle of radius
/// L2 at azimuths {pi, pi + 2pi/3, pi - 2pi/3}. Each loop link joins M_i to
/// N_{i+-1} and has length L.
inline std::array<Vec3, 6> joint_points(const PalmConfiguration& config) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  std::array<Vec3, 6> pts;
  for (int i = 0; i < 3; ++i) {
    const double azimuth = third * (i == 2 ? -1 : i);
    pts[i] = {config.l1 * std::cos(azimuth), config.l1 * std::sin(azimuth), 0.0};
    pts[3 + i] = {config.l2 * std::cos(std::numbers::pi + azimuth),
                  config.l2 * std::sin(std::numbers::pi + azimuth), config.l3};
  }
  return pts;
}

namespace detail {

// Joint order around the loop: M1 N3 M2 N1 M3 N2 (indices into the
// (M1,M2,M3,N1,N2,N3) array). Consecutive entries share one physical link.
inline constexpr std::array<int, 6> loop_order = {0, 5, 1, 3, 2, 4};

}  // namespace detail

/// Builds the six joint screws for an interior pose. Each revolute axis is
/// perpendicular to the two loop links meeting at its joint, oriented so the
/// M1 axis has a positive x component; moments are joint_point x direction.
inline ScrewSystem screw_system(const PalmConfiguration& config) {
  if (!(config.l1 > 0.0 && config.l2 > 0.0 && config.l3 > 0.0))
    throw DegenerateConfiguration("screw system needs l1, l2, l3 strictly positive");

  ScrewSystem sys;
  sys.joint_points = joint_points(config);
  const double scale = config.l1 + config.l2 + config.l3;

  for (int k = 0; k < 6; ++k) {
    const int j = detail::loop_order[k];
    const Vec3& at = sys.joint_points[j];
    const Vec3& next = sys.joint_points[detail::loop_order[(k + 1) % 6]];
    const Vec3& prev = sys.joint_points[detail::loop_order[(k + 5) % 6]];
    const Vec3 axis = (next - at).cross(prev - at);
    const double n = axis.norm();
    if (n < 1e-9 * scale * scale)
      throw DegenerateConfiguration("joint axis undefined at workspace boundary (l1 = " +
                                    std::to_string(config.l1) + ", l3 = " +
                                    std::to_string(config.l3) + ")");
    const Vec3 s = axis * (1.0 / n);
    sys.joints[j] = {s, at.cross(s)};
  }
  return sys;
}

/// Representative transmission branches. The remaining four are images of
/// these two under the 2pi/3 rotational symmetry.
enum class Branch { M1N2, M1N3 };

/// Transmission wrench screw of a branch: the unit pure force along the loop
/// link just downstream of the branch's passive joint (the first two-force
/// member the drive torque pushes through). For branch M1N2 that is the link
/// N2-M3. The line meets the passive axis at the joint center, so the wrench
/// is reciprocal to the passive joint screw by construction and transmits no
/// work through it.
inline Screw transmission_wrench(const ScrewSystem& system, Branch branch) {
  const int passive = branch == Branch::M1N2 ? 4 : 5;       // N2 or N3
  const int downstream = branch == Branch::M1N2 ? 2 : 1;    // M3 or M2
  const Vec3& from = system.joint_points[passive];
  const Vec3& to = system.joint_points[downstream];
  const Vec3 line = (to - from).normalized();
  const Screw tws{line, from.cross(line)};

  const double scale = from.norm() + to.norm();
  if (std::fabs(reciprocal_product(tws, system.joints[0])) < 1e-9 * scale)
    throw SingularBranch("transmission wrench is reciprocal to the driving joint");
  return tws;
}

/// Input twist: unit-rate motion of the drive radius along the x axis,
/// written as the screw (L1, 0, 0; 0, 0, 0).
inline Screw input_twist(const PalmConfiguration& config) {
  return {{config.l1, 0.0, 0.0}, {}};
}

/// Output twist: unit-rate motion of the palm height along the z axis,
/// written as the screw (0, 0, L3; 0, 0, 0).
inline Screw output_twist(const PalmConfiguration& config) {
  return {{0.0, 0.0, config.l3}, {}};
}

/// Input and output transmission indices and their minimum.
struct TransmissionReport {
  double zeta = 0.0;   // input transmission index, (0, 1]
  double sigma = 0.0;  // output transmission index, (0, 1]
  double kappa = 0.0;  // local transmission index, min(zeta, sigma)
};

/// Workspace-wide normalizers for the transmission indices.
struct TransmissionScale {
  double input_max = 0.0;
  double output_max = 0.0;
};

namespace detail {

inline void raw_transmission(const PalmConfiguration& config, double& in, double& out) {
  const ScrewSystem sys = screw_system(config);
  const Screw tws = transmission_wrench(sys, Branch::M1N2);
  in = std::fabs(reciprocal_product(tws, input_twist(config)));
  out = std::fabs(reciprocal_product(tws, output_twist(config)));
}

/// Golden-section maximization of f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 160 && d - c > 1e-14 * (std::fabs(a) + std::fabs(b)); ++i) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace detail

/// Fraction of the link length kept clear of the workspace boundary when
/// sweeping for index normalizers; poses with min(L1, L3) below this margin
/// blow up the screw normalization and are treated as limits, not samples.
inline constexpr double index_margin_frac = 1e-3;

/// Transmission normalizers: the suprema of the raw input/output pairings
/// over the feasible L1 range, located on a uniform grid and then polished by
/// golden-section search so no interior sample can exceed them. A 1e-12
/// relative guard keeps ratios within (0, 1] under roundoff.
inline TransmissionScale transmission_scale(const PalmParams& params, int samples = 2000) {
  if (samples < 2) throw OutOfRange("transmission_scale needs samples >= 2");
  const double margin = index_margin_frac * params.link_length;
  const double lo = margin;
  const double hi = params.l1_upper() - margin;

  const auto raw_in = [&](double l1) {
    double in, out;
    detail::raw_transmission(pose_from_l1(l1, params), in, out);
    return in;
  };
  const auto raw_out = [&](double l1) {
    double in, out;
    detail::raw_transmission(pose_from_l1(l1, params), in, out);
    return out;
  };

  double best_in = 0.0, best_out = 0.0, arg_in = lo, arg_out = lo;
  for (int i = 0; i < samples; ++i) {
    const double l1 = lo + (hi - lo) * i / (samples - 1);
    const PalmConfiguration pose = pose_from_l1(l1, params);
    if (std::min(pose.l1, pose.l3) < margin) continue;
    double in, out;
    detail::raw_transmission(pose, in, out);
    if (in > best_in) { best_in = in; arg_in = l1; }
    if (out > best_out) { best_out = out; arg_out = l1; }
  }

  const double h = (hi - lo) / (samples - 1);
  TransmissionScale scale;
  scale.input_max = detail::golden_max(raw_in, std::max(lo, arg_in - h), std::min(hi, arg_in + h));
  scale.output_max =
      detail::golden_max(raw_out, std::max(lo, arg_out - h), std::min(hi, arg_out + h));
  scale.input_max = std::max(scale.input_max, best_in) * (1.0 + 1e-12);
  scale.output_max = std::max(scale.output_max, best_out) * (1.0 + 1e-12);
  return scale;
}

/// Transmission indices of an interior pose, normalized by the workspace
/// suprema. Branches M1N2 and M1N3 are mirror images through the x-z plane
/// and give identical indices; M1N2 is evaluated.
inline TransmissionReport transmission_indices(const PalmConfiguration& config,
                                               const TransmissionScale& scale) {
  if (!(scale.input_max > 0.0 && scale.output_max > 0.0))
    throw OutOfRange("transmission scale must be positive");
  double in, out;
  detail::raw_transmission(config, in, out);
  TransmissionReport report;
  report.zeta = in / scale.input_max;
  report.sigma = out / scale.output_max;
  report.kappa = std::min(report.zeta, report.sigma);
  return report;
}

}  // namespace bricard
