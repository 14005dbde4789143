#pragma once

#include "fde/params.hpp"

// Exact radial solutions and profiles. Every function takes a radius and
// returns a scalar; nothing here builds n-dimensional fields.

namespace fde {

struct BarenblattProfile {
  double D = 0.0;  // shape parameter, D = 0 is the singular solution
  double T = 1.0;  // extinction time (physical form only)
};

/// Generalized Barenblatt solution U_{D,T}(y, tau) of the fast diffusion equation.
/// Throws DomainError if tau >= T or D < 0, SingularityError if D = 0 and y = 0.
double eval_barenblatt_physical(const ProblemParams& p, const BarenblattProfile& prof,
                                double y_radius, double tau);

/// Stationary profile V_D(x) = (D + x^2)^{1/(m-1)} of the rescaled equation.
double eval_rescaled_profile(const ProblemParams& p, double D, double x_radius);

/// Explicit solution with data amp * r^{-mu}:
/// v = (C e^{2(n-mu)t} + 1)^{1/(1-m)} r^{-mu}, C = amp^{1-m} - 1.
/// For amp < 1 the bracket reaches zero at a finite time; past it the value is 0.
double eval_mu_tail_family(const ProblemParams& p, double amp, double x_radius, double t);

/// Time at which the amp < 1 member of the family vanishes (infinity for amp >= 1).
double mu_tail_vanishing_time(const ProblemParams& p, double amp);

/// Spatially homogeneous solution c e^{mu n t}.
double eval_homogeneous(const ProblemParams& p, double c, double t);

}  // namespace fde
