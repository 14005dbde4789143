#pragma once

#include <string>

namespace fde {

/// How strictly the dimension n is validated.
///   strict  : integer n >= 5
///   relaxed : real n > 4 (continuation studies; the radial operator is fine)
enum class DimensionMode { strict, relaxed };

/// Admissible range for the tail exponent l.
///   theorem : mu+2 < l <= L
///   relaxed : mu+2 < l < n (enough for the barrier lemmas)
enum class TailRange { theorem, relaxed };

std::string to_string(TailRange range);

/// Dimension/exponent pair with every derived constant computed eagerly.
struct ProblemParams {
  double n = 0.0;
  double m = 0.0;
  double mu = 0.0;       // 2/(1-m)
  double m_c = 0.0;      // (n-2)/n
  double m_star = 0.0;   // (n-4)/(n-2)
  double beta_ss = 0.0;  // 1/(n(1-m)-2), self-similar exponent
  double L = 0.0;        // mu + sqrt(2(n-mu)), double-root tail exponent
  double k_star = 0.0;   // (2(n-mu))^{mu/2}
  DimensionMode mode = DimensionMode::strict;

  bool operator==(const ProblemParams&) const = default;
};

/// Validates (n, m) and derives the constants.
/// Throws DomainError unless 0 < m < m_star and n passes `mode`.
ProblemParams make_params(double n, double m, DimensionMode mode = DimensionMode::strict);

/// Tail perturbation of the initial datum: v0 ~ r^{-mu} - c r^{-l}.
struct TailSpec {
  double l = 0.0;
  double c_lo = 0.5;  // lower-bound coefficient: v0 >= r^{-mu} - c_lo r^{-l}
  double c_hi = 0.5;  // upper-bound coefficient: v0 <= r^{-mu} - c_hi r^{-l}
  double amp = 1.0;   // physical amplitude A of u0 ~ A|y|^{-mu}
};

/// Throws DomainError if the tail is not admissible for `range`.
void validate_tail(const ProblemParams& p, const TailSpec& tail, TailRange range);

/// The l-dependent exponent family.
struct RateSet {
  double l = 0.0;
  double kappa = 0.0;
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  double gamma = 0.0;   // grow-up exponent of ||v||_inf
  double lambda = 0.0;  // outer convergence exponent
  double theta = 0.0;   // physical extinction exponent
  bool above_L = false;  // roots taken from the l >= L branch
};

double kappa_of(const ProblemParams& p, double l);

/// Closed-form exponents for mu+2 < l < n. Throws DomainError otherwise.
RateSet derive_rates(const ProblemParams& p, double l);

/// Residual of alpha^2 - (n-2-mu-kappa) alpha + 2 kappa.
double alpha_quadratic(const ProblemParams& p, double kappa, double alpha);

/// theta = (n mu - gamma) / (2(n - mu)).
double theta_of_gamma(const ProblemParams& p, double gamma);

/// Extinction time T = (amp/k_star)^{1-m}. Throws DomainError for amp <= 0.
double extinction_time(const ProblemParams& p, double amp);

/// gamma(L) from its own closed form mu(n+2-mu-2 sqrt(2(n-mu))).
double gamma_max(const ProblemParams& p);

}  // namespace fde
