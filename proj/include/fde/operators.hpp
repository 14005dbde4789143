#pragma once

#include <functional>
#include <variant>

#include "fde/params.hpp"

// The parabolic operator of the radial rescaled problem
//
//   P v = v_t - (1/m)((v^m)_rr + (n-1)/r (v^m)_r) - mu r v_r - mu n v
//
// and the profile operator
//
//   A psi = (xi^2 + psi)(psi'' + (n-1)/xi psi') + 2 kappa psi
//           - (mu + kappa) xi psi' - (mu/2) psi'^2
//
// linked by P[sigma (xi^2 + psi)^{-mu/2}] = (mu/2) sigma (xi^2+psi)^{-mu/2-1} A psi
// for sigma = sigma0 e^{mu kappa t}, xi = sigma^{1/mu} r.

namespace fde {

/// Value and the derivatives of a radial space-time field needed by P.
struct Jet {
  double v = 0.0;
  double v_t = 0.0;
  double v_r = 0.0;
  double v_rr = 0.0;
};

using ScalarField = std::function<double(double r, double t)>;
using JetField = std::function<Jet(double r, double t)>;

/// P v from analytic derivatives. Throws DomainError for r <= 0.
double residual_P(const ProblemParams& p, const Jet& jet, double r);
double residual_P(const ProblemParams& p, const JetField& field, double r, double t);

/// P v from centered second-order differences with step h in both r and t
/// (one-sided second order in t when t < h). Requires r > h.
double residual_P_fd(const ProblemParams& p, const ScalarField& field, double r, double t,
                     double h);

/// Magnitude of the largest individual term of P v, used to normalize residuals.
double residual_P_scale(const ProblemParams& p, const Jet& jet, double r);

Jet jet_rescaled_profile(const ProblemParams& p, double D, double r);
Jet jet_mu_tail_family(const ProblemParams& p, double amp, double r, double t);
Jet jet_homogeneous(const ProblemParams& p, double c, double t);

/// psi and its first two derivatives at one point.
struct PsiDerivs {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// psi = 1 - eps xi^2
struct QuadraticPiece {
  double eps = 0.0;
};

/// psi = a xi^{-alpha}
struct PowerPiece {
  double a = 0.0;
  double alpha = 0.0;
};

/// psi = A xi^{-alpha} - B xi^{-beta}, beta > alpha. A and B are kept as
/// logarithms because the selected constants can exceed double range in
/// intermediate products near the edges of the tail range.
struct TwoPowerPiece {
  double log_A = 0.0;
  double log_B = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  [[nodiscard]] double A() const;
  [[nodiscard]] double B() const;
};

using PsiPiece = std::variant<QuadraticPiece, PowerPiece, TwoPowerPiece>;

/// Throws DomainError if the piece's coefficients violate its invariants.
void validate_piece(const PsiPiece& piece);

PsiDerivs eval_piece(const PsiPiece& piece, double xi);

/// A psi from psi, psi', psi'' (generic formula).
double eval_A(const ProblemParams& p, double kappa, const PsiDerivs& psi, double xi);
double eval_A(const ProblemParams& p, double kappa, const PsiPiece& piece, double xi);
/// Largest individual term of the generic formula (rounding scale of eval_A).
double eval_A_scale(const ProblemParams& p, double kappa, const PsiDerivs& psi, double xi);

/// Specialized closed forms of A for each piece kind, expanded by powers of xi.
/// `scale` (optional) receives the sum of absolute values of the expanded terms.
double eval_A_closed_form(const ProblemParams& p, double kappa, const PsiPiece& piece, double xi,
                          double* scale = nullptr);

/// Polynomial p(beta) = beta^2 - (n-2-mu-kappa) beta + 2 kappa.
double tail_polynomial(const ProblemParams& p, double kappa, double beta);
/// Cross-term coefficient q(beta) = beta(beta+2-n) - alpha(alpha+2-n) + mu alpha beta.
double cross_polynomial(const ProblemParams& p, double alpha, double beta);
/// (mu-2)/2 x^2 + (n-2) x, the coefficient of the quadratic self-interaction terms.
double drift_coefficient(const ProblemParams& p, double x);

}  // namespace fde
