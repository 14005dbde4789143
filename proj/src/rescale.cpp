#include "fde/rescale.hpp"

#include <cmath>

#include "fde/errors.hpp"

namespace fde {

namespace {

void require_tau(const PhysicalFrame& frame, double tau) {
  if (!(tau >= 0.0 && tau < frame.T)) {
    throw DomainError("rescale: physical time must lie in [0, T)");
  }
}

// sqrt(beta_ss (1-m)/2) = 1/sqrt(2(n-mu))
double space_factor(const ProblemParams& p) {
  return std::sqrt(p.beta_ss * (1.0 - p.m) / 2.0);
}

}  // namespace

PhysicalFrame make_frame(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("make_frame: extinction time must be positive and finite");
  }
  return PhysicalFrame{T};
}

double PhysicalFrame::R(const ProblemParams& p, double tau) const {
  require_tau(*this, tau);
  return std::pow(T - tau, -p.beta_ss);
}

double rescaled_time(const ProblemParams& p, const PhysicalFrame& frame, double tau) {
  require_tau(frame, tau);
  // log(R(tau)/R(0)) = beta_ss log(T/(T-tau)) = -beta_ss log1p(-tau/T)
  return (1.0 - p.m) / 2.0 * (-p.beta_ss * std::log1p(-tau / frame.T));
}

double physical_time(const ProblemParams& p, const PhysicalFrame& frame, double t) {
  if (!(t >= 0.0)) {
    throw DomainError("rescale: rescaled time must be nonnegative");
  }
  return -frame.T * std::expm1(-2.0 * (p.n - p.mu) * t);
}

double time_to_extinction(const ProblemParams& p, const PhysicalFrame& frame, double t) {
  return frame.T * std::exp(-2.0 * (p.n - p.mu) * t);
}

RescaledPoint to_rescaled(const ProblemParams& p, const PhysicalFrame& frame,
                          const PhysicalPoint& pt) {
  const double R = frame.R(p, pt.tau);
  RescaledPoint out;
  out.t = rescaled_time(p, frame, pt.tau);
  out.x_radius = space_factor(p) * pt.y_radius / R;
  out.v_value = std::pow(R, p.n) * pt.u_value;
  return out;
}

PhysicalPoint from_rescaled(const ProblemParams& p, const PhysicalFrame& frame,
                            const RescaledPoint& pt) {
  PhysicalPoint out;
  out.tau = physical_time(p, frame, pt.t);
  // R(tau) from the remaining time directly, stable as tau -> T.
  const double R = std::pow(time_to_extinction(p, frame, pt.t), -p.beta_ss);
  out.y_radius = pt.x_radius * R / space_factor(p);
  out.u_value = std::pow(R, -p.n) * pt.v_value;
  return out;
}

FujitaPoint to_fujita_frame(const ProblemParams& p, const PhysicalFrame& frame,
                            const PhysicalPoint& pt) {
  require_tau(frame, pt.tau);
  const double remaining = frame.T - pt.tau;
  FujitaPoint out;
  out.y_radius = pt.y_radius;
  out.s = -(1.0 - p.m) * std::log1p(-pt.tau / frame.T);
  out.w_value = std::pow((1.0 - p.m) * remaining, -1.0 / (1.0 - p.m)) * pt.u_value;
  return out;
}

double physical_sup_norm(const ProblemParams& p, const PhysicalFrame& frame, double t,
                         double v_sup) {
  const double R = std::pow(time_to_extinction(p, frame, t), -p.beta_ss);
  return std::pow(R, -p.n) * v_sup;
}

}  // namespace fde
