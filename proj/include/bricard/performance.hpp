#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "bricard/errors.hpp"
#include "bricard/palm.hpp"
#include "bricard/screw.hpp"

namespace bricard {

/// dL3/dL1 along the constraint curve, from implicit differentiation of the
/// length-space constraint combined with the height relation:
///
///   J  = (-2 L1 + L2) / (2 L3) - (-2 L2 + L1) / (2 L3) * N1 / D1
///   N1 = 90 L1 L2^2 - 24 L^2 L1 + 48 L^2 L2 S1 S2 - 36 L1^2 L2 S2 / S1
///   D1 = 90 L2 L1^2 - 24 L^2 L2 + 48 L^2 L1 S1 S2 - 36 L2^2 L1 S1 / S2
///   S1 = sqrt(1 - 3 L1^2 / 4 L^2),  S2 = sqrt(1 - 3 L2^2 / 4 L^2)
///
/// N1 and D1 are the partial derivatives of the constraint with respect to
/// L1 and L2.
inline double jacobian_analytic(const PalmConfiguration& config, const PalmParams& params) {
  detail::require_symmetric_twist(params);
  const double L = params.link_length;
  const double l1 = config.l1, l2 = config.l2, l3 = config.l3;
  if (l3 < 1e-12 * L) throw Singular("jacobian undefined: l3 vanishes");

  const double Ls = L * L;
  const double s1 = std::sqrt(1.0 - 3.0 * l1 * l1 / (4.0 * Ls));
  const double s2 = std::sqrt(1.0 - 3.0 * l2 * l2 / (4.0 * Ls));
  if (s1 < 1e-12 || s2 < 1e-12) throw Singular("jacobian undefined at the length bound");

  const double n1 = 90.0 * l1 * l2 * l2 - 24.0 * Ls * l1 + 48.0 * Ls * l2 * s1 * s2 -
                    36.0 * l1 * l1 * l2 * s2 / s1;
  const double d1 = 90.0 * l2 * l1 * l1 - 24.0 * Ls * l2 + 48.0 * Ls * l1 * s1 * s2 -
                    36.0 * l2 * l2 * l1 * s1 / s2;
  if (std::fabs(d1) < 1e-12 * Ls * L)
    throw Singular("constraint gradient in l2 vanishes at l1 = " + std::to_string(l1));

  return (-2.0 * l1 + l2) / (2.0 * l3) - (-2.0 * l2 + l1) / (2.0 * l3) * n1 / d1;
}

/// Central-difference reference for the Jacobian: (L3(l1+h) - L3(l1-h)) / 2h.
inline double jacobian_fd(double l1, const PalmParams& params, double step) {
  if (!(step > 0.0)) throw OutOfRange("fd step must be positive");
  // fk_l3_from_l1 rejects brackets that leave the feasible interval.
  return (fk_l3_from_l1(l1 + step, params) - fk_l3_from_l1(l1 - step, params)) /
         (2.0 * step);
}

/// Output stiffness through the single-dof reconfiguration: K_out = K_in / J^2.
inline double output_stiffness(double input_stiffness, double jacobian) {
  if (std::fabs(jacobian) < 1e-12)
    throw Singular("stiffness transmission undefined: jacobian vanishes");
  return input_stiffness / (jacobian * jacobian);
}

/// One fully-evaluated pose of the workspace sweep.
struct PerformanceRow {
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double l2 = std::numeric_limits<double>::quiet_NaN();
  double l3 = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double jacobian = std::numeric_limits<double>::quiet_NaN();
  double stiffness_out = std::numeric_limits<double>::quiet_NaN();
  double zeta = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double kappa = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

/// Uniform sweep of the input radius over (eps, sqrt(3)L/3 - eps) with
/// eps = epsilon_frac * L. Row i depends only on i; per-pose failures land in
/// the row's status field instead of aborting the sweep. Poses inside the
/// index exclusion margin keep their kinematic fields but report no indices.
inline std::vector<PerformanceRow> workspace_sweep(const PalmParams& params, int samples,
                                                   double input_stiffness = 1.0,
                                                   double epsilon_frac = 1e-3) {
  if (samples < 2) throw OutOfRange("sweep needs samples >= 2");
  if (!(epsilon_frac > 0.0 && epsilon_frac < 0.5))
    throw OutOfRange("epsilon_frac must lie in (0, 0.5)");
  detail::require_symmetric_twist(params);

  const double L = params.link_length;
  const double lo = epsilon_frac * L;
  const double hi = params.l1_upper() - epsilon_frac * L;
  const TransmissionScale scale = transmission_scale(params);

  std::vector<PerformanceRow> rows(samples);
  for (int i = 0; i < samples; ++i) {
    PerformanceRow& row = rows[i];
    const double l1 = lo + (hi - lo) * i / (samples - 1);
    try {
      const PalmConfiguration pose = pose_from_l1(l1, params);
      row.l1 = pose.l1;
      row.l2 = pose.l2;
      row.l3 = pose.l3;
      const JointAngles angles = angles_from_pose(pose, params);
      row.beta = angles.beta;
      row.gamma = angles.gamma;
      row.jacobian = jacobian_analytic(pose, params);
      row.stiffness_out = output_stiffness(input_stiffness, row.jacobian);
      if (std::min(pose.l1, pose.l3) < index_margin_frac * L) {
        row.status = "near_boundary";
        continue;
      }
      const TransmissionReport report = transmission_indices(pose, scale);
      row.zeta = report.zeta;
      row.sigma = report.sigma;
      row.kappa = report.kappa;
    } catch (const DegenerateConfiguration&) {
      row.status = "degenerate";
    } catch (const SingularBranch&) {
      row.status = "singular_branch";
    } catch (const Singular&) {
      row.status = "singular";
    } catch (const Error&) {
      row.status = "error";
    }
  }
  return rows;
}

namespace detail {

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline constexpr const char* performance_csv_header =
    "l1_mm,l2_mm,l3_mm,beta_rad,gamma_rad,jacobian,stiffness_out,zeta,sigma,kappa,status";

/// Writes the sweep as CSV with full double precision; byte-identical for
/// identical inputs.
inline void write_csv(const std::vector<PerformanceRow>& rows, std::ostream& os) {
  os << performance_csv_header << '\n';
  for (const PerformanceRow& r : rows) {
    os << detail::format_full(r.l1) << ',' << detail::format_full(r.l2) << ','
       << detail::format_full(r.l3) << ',' << detail::format_full(r.beta) << ','
       << detail::format_full(r.gamma) << ',' << detail::format_full(r.jacobian) << ','
       << detail::format_full(r.stiffness_out) << ',' << detail::format_full(r.zeta) << ','
       << detail::format_full(r.sigma) << ',' << detail::format_full(r.kappa) << ','
       << r.status << '\n';
  }
}

}  // namespace bricard
