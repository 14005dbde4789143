#include "fde/params.hpp"

#include <cmath>
#include <sstream>

#include "fde/errors.hpp"

namespace fde {

std::string to_string(TailRange range) {
  return range == TailRange::theorem ? "theorem" : "relaxed";
}

ProblemParams make_params(double n, double m, DimensionMode mode) {
  if (!std::isfinite(n) || !std::isfinite(m)) {
    throw DomainError("make_params: n and m must be finite");
  }
  if (mode == DimensionMode::strict) {
    if (n < 5.0 || std::floor(n) != n) {
      std::ostringstream os;
      os << "make_params: dimension n=" << n << " must be an integer >= 5";
      throw DomainError(os.str());
    }
  } else if (n <= 4.0) {
    std::ostringstream os;
    os << "make_params: dimension n=" << n << " must exceed 4 in relaxed mode";
    throw DomainError(os.str());
  }
  const double m_star = (n - 4.0) / (n - 2.0);
  if (!(m > 0.0 && m < m_star)) {
    std::ostringstream os;
    os << "make_params: exponent m=" << m << " must lie in (0, m_star=" << m_star << ")";
    throw DomainError(os.str());
  }

  ProblemParams p;
  p.n = n;
  p.m = m;
  p.mode = mode;
  p.mu = 2.0 / (1.0 - m);
  p.m_c = (n - 2.0) / n;
  p.m_star = m_star;
  p.beta_ss = 1.0 / (n * (1.0 - m) - 2.0);
  p.L = p.mu + std::sqrt(2.0 * (n - p.mu));
  p.k_star = std::pow(2.0 * (n - p.mu), p.mu / 2.0);
  return p;
}

void validate_tail(const ProblemParams& p, const TailSpec& tail, TailRange range) {
  const double lo = p.mu + 2.0;
  std::ostringstream os;
  if (range == TailRange::theorem) {
    // l == L is admissible; allow for the rounding in p.L itself.
    if (!(tail.l > lo && tail.l <= p.L * (1.0 + 1e-14))) {
      os << "tail exponent l=" << tail.l << " outside the admissible range (mu+2, L] = (" << lo
         << ", " << p.L << "]";
      throw DomainError(os.str());
    }
  } else if (!(tail.l > lo && tail.l < p.n)) {
    os << "tail exponent l=" << tail.l << " outside the relaxed range (mu+2, n) = (" << lo << ", "
       << p.n << ")";
    throw DomainError(os.str());
  }
  if (!(tail.c_hi > 0.0 && tail.c_hi <= tail.c_lo && tail.c_lo < 1.0)) {
    os << "tail coefficients must satisfy 0 < c_hi <= c_lo < 1 (got c_lo=" << tail.c_lo
       << ", c_hi=" << tail.c_hi << ")";
    throw DomainError(os.str());
  }
  if (!(tail.amp > 0.0)) {
    os << "amplitude must be positive (got " << tail.amp << ")";
    throw DomainError(os.str());
  }
}

double kappa_of(const ProblemParams& p, double l) {
  return (l - p.mu - 2.0) * (p.n - l) / (l - p.mu);
}

double alpha_quadratic(const ProblemParams& p, double kappa, double alpha) {
  return alpha * alpha - (p.n - 2.0 - p.mu - kappa) * alpha + 2.0 * kappa;
}

double theta_of_gamma(const ProblemParams& p, double gamma) {
  return (p.n * p.mu - gamma) / (2.0 * (p.n - p.mu));
}

RateSet derive_rates(const ProblemParams& p, double l) {
  if (!(l > p.mu + 2.0 && l < p.n)) {
    std::ostringstream os;
    os << "derive_rates: l=" << l << " outside (mu+2, n) = (" << p.mu + 2.0 << ", " << p.n << ")";
    throw DomainError(os.str());
  }
  RateSet r;
  r.l = l;
  r.kappa = kappa_of(p, l);
  // Both roots in factored form; which one is the smaller depends on l vs L.
  const double root_shift = l - p.mu - 2.0;
  const double root_ratio = 2.0 * (p.n - l) / (l - p.mu);
  r.above_L = l > p.L;
  if (!r.above_L) {
    r.alpha_minus = root_shift;
    r.alpha_plus = root_ratio;
  } else {
    r.alpha_minus = root_ratio;
    r.alpha_plus = root_shift;
  }
  r.gamma = p.mu * r.kappa;
  r.lambda = (l - p.mu) * r.kappa;
  r.theta = theta_of_gamma(p, r.gamma);
  return r;
}

double extinction_time(const ProblemParams& p, double amp) {
  if (!(amp > 0.0)) {
    throw DomainError("extinction_time: amplitude must be positive");
  }
  return std::pow(amp / p.k_star, 1.0 - p.m);
}

double gamma_max(const ProblemParams& p) {
  return p.mu * (p.n + 2.0 - p.mu - 2.0 * std::sqrt(2.0 * (p.n - p.mu)));
}

}  // namespace fde
