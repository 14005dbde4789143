#pragma once

#include "fde/params.hpp"

// Self-similar change of variables between the physical fast diffusion
// problem u(y, tau) and the rescaled Fokker-Planck problem v(x, t):
//
//   R(tau) = (T - tau)^{-beta_ss}
//   t      = (1-m)/2 log(R(tau)/R(0))       <=>  T - tau = T e^{-2(n-mu) t}
//   x      = sqrt(beta_ss (1-m)/2) y / R(tau)
//   v      = R(tau)^n u
//
// and the alternative scaling adapted to the singular solution only:
//
//   w = [(1-m)(T - tau)]^{-1/(1-m)} u,   s = (1-m) log(T/(T - tau)) = (2/beta_ss) t.
//
// The w-equation w_s = Delta(w^m/m) + w becomes, with Z = w^m and p = 1/m,
// the Fujita-type equation (Z^p)_s = a Delta Z + b Z^p; it is documented here
// only and not exposed as an operation.

namespace fde {

struct PhysicalFrame {
  double T = 1.0;  // extinction time

  /// R(tau) = (T - tau)^{-beta_ss}; throws DomainError outside [0, T).
  [[nodiscard]] double R(const ProblemParams& p, double tau) const;
};

/// Throws DomainError unless T > 0.
PhysicalFrame make_frame(double T);

struct PhysicalPoint {
  double y_radius = 0.0;
  double tau = 0.0;
  double u_value = 0.0;
};

struct RescaledPoint {
  double x_radius = 0.0;
  double t = 0.0;
  double v_value = 0.0;
};

struct FujitaPoint {
  double y_radius = 0.0;
  double s = 0.0;
  double w_value = 0.0;
};

RescaledPoint to_rescaled(const ProblemParams& p, const PhysicalFrame& frame,
                          const PhysicalPoint& pt);
PhysicalPoint from_rescaled(const ProblemParams& p, const PhysicalFrame& frame,
                            const RescaledPoint& pt);
FujitaPoint to_fujita_frame(const ProblemParams& p, const PhysicalFrame& frame,
                            const PhysicalPoint& pt);

/// Rescaled time of physical time tau.
double rescaled_time(const ProblemParams& p, const PhysicalFrame& frame, double tau);
/// Physical time of rescaled time t: T(1 - e^{-2(n-mu)t}).
double physical_time(const ProblemParams& p, const PhysicalFrame& frame, double t);
/// T - tau expressed through t: T e^{-2(n-mu)t}.
double time_to_extinction(const ProblemParams& p, const PhysicalFrame& frame, double t);

/// ||u(., tau)||_inf = R(tau)^{-n} ||v(., t)||_inf at the tau corresponding to t.
double physical_sup_norm(const ProblemParams& p, const PhysicalFrame& frame, double t,
                         double v_sup);

}  // namespace fde
