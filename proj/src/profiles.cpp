#include "fde/profiles.hpp"

#include <cmath>
#include <limits>

#include "fde/errors.hpp"

namespace fde {

double eval_barenblatt_physical(const ProblemParams& p, const BarenblattProfile& prof,
                                double y_radius, double tau) {
  if (!(prof.T > 0.0) || !(tau >= 0.0 && tau < prof.T)) {
    throw DomainError("eval_barenblatt_physical: need 0 <= tau < T");
  }
  if (prof.D < 0.0 || y_radius < 0.0) {
    throw DomainError("eval_barenblatt_physical: need D >= 0 and y >= 0");
  }
  if (prof.D == 0.0 && y_radius == 0.0) {
    throw SingularityError("eval_barenblatt_physical: singular solution sampled at the origin");
  }
  const double R = std::pow(prof.T - tau, -p.beta_ss);
  const double z = y_radius / R;
  const double base = prof.D + p.beta_ss * (1.0 - p.m) / 2.0 * z * z;
  return std::pow(R, -p.n) * std::pow(base, -1.0 / (1.0 - p.m));
}

double eval_rescaled_profile(const ProblemParams& p, double D, double x_radius) {
  if (D < 0.0 || x_radius < 0.0) {
    throw DomainError("eval_rescaled_profile: need D >= 0 and x >= 0");
  }
  if (D == 0.0) {
    if (x_radius == 0.0) {
      throw SingularityError("eval_rescaled_profile: V_0 sampled at the origin");
    }
    return std::pow(x_radius, -p.mu);
  }
  return std::pow(D + x_radius * x_radius, 1.0 / (p.m - 1.0));
}

double eval_mu_tail_family(const ProblemParams& p, double amp, double x_radius, double t) {
  if (!(amp > 0.0)) {
    throw DomainError("eval_mu_tail_family: amplitude must be positive");
  }
  if (!(x_radius > 0.0)) {
    throw SingularityError("eval_mu_tail_family: singular at the origin");
  }
  const double C = std::pow(amp, 1.0 - p.m) - 1.0;
  const double bracket = C * std::exp(2.0 * (p.n - p.mu) * t) + 1.0;
  if (bracket <= 0.0) {
    return 0.0;
  }
  return std::pow(bracket, 1.0 / (1.0 - p.m)) * std::pow(x_radius, -p.mu);
}

double mu_tail_vanishing_time(const ProblemParams& p, double amp) {
  if (!(amp > 0.0)) {
    throw DomainError("mu_tail_vanishing_time: amplitude must be positive");
  }
  const double C = std::pow(amp, 1.0 - p.m) - 1.0;
  if (C >= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::log(-1.0 / C) / (2.0 * (p.n - p.mu));
}

double eval_homogeneous(const ProblemParams& p, double c, double t) {
  if (!(c > 0.0)) {
    throw DomainError("eval_homogeneous: c must be positive");
  }
  return c * std::exp(p.mu * p.n * t);
}

}  // namespace fde
