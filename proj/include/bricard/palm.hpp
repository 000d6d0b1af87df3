#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bricard/errors.hpp"

namespace bricard {

inline constexpr double symmetric_twist = 2.0 * std::numbers::pi / 3.0;

/// Fixed geometry of the triple-symmetric Bricard loop: all six links share
/// one length L and the joint-axis twist alternates between w and 2*pi - w.
struct PalmParams {
  double link_length = 120.0;       // L, mm
  double twist = symmetric_twist;   // w, rad

  /// Upper bound of the input radius L1: sqrt(3)/3 * L.
  double l1_upper() const { return std::sqrt(3.0) / 3.0 * link_length; }
  /// Upper bound of the output radius L2: 2*sqrt(3)/3 * L.
  double l2_upper() const { return 2.0 * std::sqrt(3.0) / 3.0 * link_length; }
};

/// One loop pose in joint space. beta drives, gamma follows.
struct JointAngles {
  double beta = 0.0;   // rad, input, (0, pi)
  double gamma = 0.0;  // rad, passive, (2*pi/3, pi) on the bifurcation-free branch
};

/// One loop pose in length space: circumradii of the two joint triangles and
/// the height between their planes.
struct PalmConfiguration {
  double l1 = 0.0;  // mm, radius of the M-triangle
  double l2 = 0.0;  // mm, radius of the N-triangle
  double l3 = 0.0;  // mm, height of the N-plane over the M-plane
};

namespace detail {

inline constexpr double open_interval_margin_frac = 1e-9;
inline constexpr double radicand_clamp_tol = 1e-12;

inline void require_valid(const PalmParams& p) {
  if (!(p.link_length > 0.0))
    throw OutOfRange("link_length must be positive, got " + std::to_string(p.link_length));
  if (!(p.twist > 0.0 && p.twist < std::numbers::pi))
    throw OutOfRange("twist must lie in (0, pi), got " + std::to_string(p.twist));
}

/// The closed-form parameterization below is specific to the symmetric twist.
inline void require_symmetric_twist(const PalmParams& p) {
  require_valid(p);
  if (std::fabs(p.twist - symmetric_twist) > 1e-12)
    throw OutOfRange("this parameterization requires twist = 2*pi/3, got " +
                     std::to_string(p.twist));
}

/// Clamp a slightly-negative radicand to zero; reject anything worse.
/// `scale` carries the natural magnitude of the expression so the tolerance
/// is scale free.
inline double clamped_sqrt(double radicand, double scale, const char* what) {
  if (radicand < -radicand_clamp_tol * scale)
    throw NegativeRadicand(std::string(what) + ": radicand " + std::to_string(radicand) +
                           " below -1e-12 * " + std::to_string(scale));
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace detail

/// Residual of the closed-loop motion coordination equation for a symmetric
/// Bricard loop with twist w:
///
///   sin^2(w) (cos b + cos g) + (1 + cos^2 w) cos b cos g
///     + cos^2 w - 2 cos w sin b sin g
///
/// Zero iff the loop closes at (beta, gamma).
inline double loop_residual(double beta, double gamma, double twist) {
  const double sw = std::sin(twist);
  const double cw = std::cos(twist);
  const double cb = std::cos(beta);
  const double cg = std::cos(gamma);
  return sw * sw * (cb + cg) + (1.0 + cw * cw) * cb * cg + cw * cw -
         2.0 * cw * std::sin(beta) * std::sin(gamma);
}

/// Coordination residual specialized to twist = 2*pi/3 and scaled by 4:
///   5 cos b cos g + 4 sin b sin g + 3 cos b + 3 cos g + 1
inline double coordination_residual(double beta, double gamma) {
  return 5.0 * std::cos(beta) * std::cos(gamma) +
         4.0 * std::sin(beta) * std::sin(gamma) + 3.0 * std::cos(beta) +
         3.0 * std::cos(gamma) + 1.0;
}

/// The passive angle gamma in (2*pi/3, pi) coordinated with the input beta in
/// (0, pi), on the bifurcation-free branch where gamma >= beta.
///
/// Bracketed bisection on [max(beta, 2*pi/3), pi]. On that interval the
/// residual is positive at the left end (on the diagonal it factors as
/// (cos b + 1)(cos b + 5) > 0) and negative at pi, and the only root there is
/// the branch root; the mirror-image root always lies below beta.
inline double gamma_from_beta(double beta) {
  constexpr double pi = std::numbers::pi;
  if (!(beta > 0.0 && beta < pi))
    throw NoRootInBranch("beta must lie in (0, pi), got " + std::to_string(beta));

  double lo = std::max(beta, symmetric_twist);
  double hi = pi;
  if (!(coordination_residual(beta, lo) > 0.0 && coordination_residual(beta, hi) < 0.0))
    throw NoRootInBranch("no sign change on (2*pi/3, pi) for beta = " + std::to_string(beta));

  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    mid = 0.5 * (lo + hi);
    const double r = coordination_residual(beta, mid);
    if (r == 0.0) return mid;
    (r > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

/// Lengths (L1, L2, L3) for a feasible (beta, gamma) pair:
///   L1 = 2*sqrt(3)/3 L cos(g/2)
///   L2 = 2*sqrt(3)/3 L cos(b/2)
///   L3 = L sqrt(1 - 4/3 cos^2(g/2) - 4/3 cos^2(b/2) + 4/3 cos(g/2) cos(b/2))
inline PalmConfiguration pose_from_angles(const JointAngles& angles, const PalmParams& params) {
  constexpr double pi = std::numbers::pi;
  detail::require_symmetric_twist(params);
  if (!(angles.beta > 0.0 && angles.beta < pi) ||
      !(angles.gamma > symmetric_twist && angles.gamma < pi))
    throw InfeasibleAngles("angles off the feasible branch: beta = " +
                           std::to_string(angles.beta) + ", gamma = " +
                           std::to_string(angles.gamma));
  if (std::fabs(loop_residual(angles.beta, angles.gamma, params.twist)) > 1e-6)
    throw InfeasibleAngles("loop does not close at beta = " + std::to_string(angles.beta) +
                           ", gamma = " + std::to_string(angles.gamma));

  const double L = params.link_length;
  const double cg = std::cos(angles.gamma / 2.0);
  const double cb = std::cos(angles.beta / 2.0);
  const double k = 2.0 * std::sqrt(3.0) / 3.0;
  const double radicand = 1.0 - 4.0 / 3.0 * cg * cg - 4.0 / 3.0 * cb * cb + 4.0 / 3.0 * cg * cb;
  const double l3 = L * detail::clamped_sqrt(radicand, 1.0, "palm height");
  return {k * L * cg, k * L * cb, l3};
}

/// Inverse of pose_from_angles on the chosen branch:
///   gamma = 2 acos(sqrt(3) L1 / (2 L)),  beta = 2 acos(sqrt(3) L2 / (2 L))
inline JointAngles angles_from_pose(const PalmConfiguration& config, const PalmParams& params) {
  detail::require_symmetric_twist(params);
  const double L = params.link_length;
  const auto acos_arg = [&](double len, const char* what) {
    double a = std::sqrt(3.0) * len / (2.0 * L);
    if (a < -1e-12 || a > 1.0 + 1e-12)
      throw OutOfRange(std::string(what) + " maps outside acos domain: " + std::to_string(a));
    return std::clamp(a, 0.0, 1.0);
  };
  return {2.0 * std::acos(acos_arg(config.l2, "l2")),
          2.0 * std::acos(acos_arg(config.l1, "l1"))};
}

/// Residual of the length-space constraint between L1 and L2 (mm^4):
///
///   45 L1^2 L2^2 - 12 L^2 (L1^2 + L2^2) + 48 L^2 L1 L2 sqrt(A) sqrt(B)
///
/// with A = 1 - 3 L1^2 / (4 L^2), B = 1 - 3 L2^2 / (4 L^2). Zero on the
/// constraint curve. Divide by L^4 for a scale-free tolerance check.
inline double constraint_residual_l1l2(double l1, double l2, const PalmParams& params) {
  detail::require_symmetric_twist(params);
  const double L2sq = params.link_length * params.link_length;
  const double A = 1.0 - 3.0 * l1 * l1 / (4.0 * L2sq);
  const double B = 1.0 - 3.0 * l2 * l2 / (4.0 * L2sq);
  const double root =
      detail::clamped_sqrt(A, 1.0, "constraint term A") * detail::clamped_sqrt(B, 1.0, "constraint term B");
  return 45.0 * l1 * l1 * l2 * l2 - 12.0 * L2sq * (l1 * l1 + l2 * l2) +
         48.0 * L2sq * l1 * l2 * root;
}

namespace detail {

inline void require_l1_interior(double l1, const PalmParams& params) {
  const double margin = open_interval_margin_frac * params.link_length;
  const double upper = params.l1_upper();
  if (!(l1 >= margin && l1 <= upper - margin))
    throw OutOfRange("l1 = " + std::to_string(l1) + " outside the open interval (0, " +
                     std::to_string(upper) + ")");
}

}  // namespace detail

/// Closed-form forward kinematics: the unique L2 > L1 on the constraint curve,
///
///   L2 = L sqrt( (112 L1^2 L^2 - 36 L1^4 + 32 L1^2 L sqrt(12 L^2 - 9 L1^2))
///                / (16 L^4 + 72 L1^2 L^2 + 81 L1^4) )
inline double fk_l2_from_l1(double l1, const PalmParams& params) {
  detail::require_symmetric_twist(params);
  detail::require_l1_interior(l1, params);
  const double L = params.link_length;
  const double Ls = L * L;
  const double x = l1 * l1;
  const double num = 112.0 * x * Ls - 36.0 * x * x +
                     32.0 * x * L * std::sqrt(12.0 * Ls - 9.0 * x);
  const double den = 16.0 * Ls * Ls + 72.0 * x * Ls + 81.0 * x * x;
  return L * detail::clamped_sqrt(num / den, 1.0, "fk ratio");
}

/// Forward kinematics height: L3 = sqrt(L^2 - L1^2 - L2^2 + L1 L2) with L2
/// taken from fk_l2_from_l1.
inline double fk_l3_from_l1(double l1, const PalmParams& params) {
  const double l2 = fk_l2_from_l1(l1, params);
  const double L = params.link_length;
  const double radicand = L * L - l1 * l1 - l2 * l2 + l1 * l2;
  return detail::clamped_sqrt(radicand, L * L, "palm height");
}

/// Full forward-kinematics pose for a given input radius.
inline PalmConfiguration pose_from_l1(double l1, const PalmParams& params) {
  const double l2 = fk_l2_from_l1(l1, params);
  const double L = params.link_length;
  const double radicand = L * L - l1 * l1 - l2 * l2 + l1 * l2;
  return {l1, l2, detail::clamped_sqrt(radicand, L * L, "palm height")};
}

/// Inverse kinematics: the unique L1 with fk_l3_from_l1(L1) = l3, by bracketed
/// bisection on the strictly decreasing height map. The quadratic-form branch
///   L2 = (L1 + sqrt(4 L^2 - 3 L1^2 - 4 L3^2)) / 2
/// is evaluated at the root as a consistency cross-check.
inline double ik_l1_from_l3(double l3, const PalmParams& params) {
  detail::require_symmetric_twist(params);
  const double L = params.link_length;
  if (!(l3 > 0.0 && l3 < L))
    throw NoRootInBranch("l3 = " + std::to_string(l3) + " outside the open interval (0, " +
                         std::to_string(L) + ")");

  const double margin = detail::open_interval_margin_frac * L;
  double lo = margin;
  double hi = params.l1_upper() - margin;
  if (!(fk_l3_from_l1(lo, params) > l3 && fk_l3_from_l1(hi, params) < l3))
    throw NoRootInBranch("l3 = " + std::to_string(l3) + " is not attainable");

  const double step_tol = 1e-10 * L;
  while (hi - lo > step_tol) {
    const double mid = 0.5 * (lo + hi);
    (fk_l3_from_l1(mid, params) > l3 ? lo : hi) = mid;
  }
  const double l1 = 0.5 * (lo + hi);

  const double quad = 4.0 * L * L - 3.0 * l1 * l1 - 4.0 * l3 * l3;
  const double l2_quadratic = 0.5 * (l1 + detail::clamped_sqrt(quad, L * L, "ik branch"));
  if (std::fabs(l2_quadratic - fk_l2_from_l1(l1, params)) > 1e-6 * L)
    throw Error("ik cross-check failed at l1 = " + std::to_string(l1));
  return l1;
}

}  // namespace bricard
