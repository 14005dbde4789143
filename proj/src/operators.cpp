#include "fde/operators.hpp"

#include <algorithm>
#include <cmath>

#include "fde/errors.hpp"

namespace fde {

namespace {

struct ResidualTerms {
  double time, grad_sq, second, radial, drift, growth;
};

ResidualTerms split_residual(const ProblemParams& p, const Jet& j, double r) {
  if (!(r > 0.0)) {
    throw DomainError("residual_P: radius must be positive");
  }
  if (!(j.v > 0.0)) {
    throw DomainError("residual_P: field must be positive");
  }
  const double vm1 = std::pow(j.v, p.m - 1.0);
  ResidualTerms t{};
  t.time = j.v_t;
  t.grad_sq = (p.m - 1.0) * vm1 / j.v * j.v_r * j.v_r;
  t.second = vm1 * j.v_rr;
  t.radial = (p.n - 1.0) / r * vm1 * j.v_r;
  t.drift = p.mu * r * j.v_r;
  t.growth = p.mu * p.n * j.v;
  return t;
}

}  // namespace

double residual_P(const ProblemParams& p, const Jet& jet, double r) {
  const auto t = split_residual(p, jet, r);
  return t.time - (t.grad_sq + t.second + t.radial) - t.drift - t.growth;
}

double residual_P(const ProblemParams& p, const JetField& field, double r, double t) {
  return residual_P(p, field(r, t), r);
}

double residual_P_scale(const ProblemParams& p, const Jet& jet, double r) {
  const auto t = split_residual(p, jet, r);
  return std::max({std::abs(t.time), std::abs(t.grad_sq), std::abs(t.second),
                   std::abs(t.radial), std::abs(t.drift), std::abs(t.growth)});
}

double residual_P_fd(const ProblemParams& p, const ScalarField& field, double r, double t,
                     double h) {
  if (!(h > 0.0)) {
    throw DomainError("residual_P_fd: step must be positive");
  }
  if (!(r > h)) {
    throw DomainError("residual_P_fd: need r > h for the centered stencil");
  }
  const double v0 = field(r, t);
  const double vp = field(r + h, t);
  const double vm = field(r - h, t);
  const double w0 = std::pow(v0, p.m);
  const double wp = std::pow(vp, p.m);
  const double wm = std::pow(vm, p.m);

  double v_t = 0.0;
  if (t >= h) {
    v_t = (field(r, t + h) - field(r, t - h)) / (2.0 * h);
  } else {
    v_t = (-3.0 * v0 + 4.0 * field(r, t + h) - field(r, t + 2.0 * h)) / (2.0 * h);
  }
  const double w_r = (wp - wm) / (2.0 * h);
  const double w_rr = (wp - 2.0 * w0 + wm) / (h * h);
  const double v_r = (vp - vm) / (2.0 * h);
  return v_t - (w_rr + (p.n - 1.0) / r * w_r) / p.m - p.mu * r * v_r - p.mu * p.n * v0;
}

Jet jet_rescaled_profile(const ProblemParams& p, double D, double r) {
  if (D < 0.0) {
    throw DomainError("jet_rescaled_profile: D must be nonnegative");
  }
  const double S = D + r * r;
  if (!(S > 0.0)) {
    throw SingularityError("jet_rescaled_profile: V_0 sampled at the origin");
  }
  const double k = p.mu / 2.0;
  Jet j;
  j.v = std::pow(S, -k);
  j.v_t = 0.0;
  j.v_r = -p.mu * r * std::pow(S, -k - 1.0);
  j.v_rr = -p.mu * std::pow(S, -k - 1.0) + p.mu * (p.mu + 2.0) * r * r * std::pow(S, -k - 2.0);
  return j;
}

Jet jet_mu_tail_family(const ProblemParams& p, double amp, double r, double t) {
  if (!(r > 0.0)) {
    throw SingularityError("jet_mu_tail_family: singular at the origin");
  }
  const double C = std::pow(amp, 1.0 - p.m) - 1.0;
  const double rate = 2.0 * (p.n - p.mu);
  const double growth = std::exp(rate * t);
  const double bracket = C * growth + 1.0;
  if (!(bracket > 0.0)) {
    throw DomainError("jet_mu_tail_family: solution has vanished at this time");
  }
  const double k = p.mu / 2.0;  // = 1/(1-m)
  const double s = std::pow(bracket, k);
  const double s_t = k * std::pow(bracket, k - 1.0) * C * rate * growth;
  Jet j;
  j.v = s * std::pow(r, -p.mu);
  j.v_t = s_t * std::pow(r, -p.mu);
  j.v_r = -p.mu * s * std::pow(r, -p.mu - 1.0);
  j.v_rr = p.mu * (p.mu + 1.0) * s * std::pow(r, -p.mu - 2.0);
  return j;
}

Jet jet_homogeneous(const ProblemParams& p, double c, double t) {
  Jet j;
  j.v = c * std::exp(p.mu * p.n * t);
  j.v_t = p.mu * p.n * j.v;
  return j;
}

double TwoPowerPiece::A() const { return std::exp(log_A); }
double TwoPowerPiece::B() const { return std::exp(log_B); }

void validate_piece(const PsiPiece& piece) {
  std::visit(
      [](const auto& pc) {
        using T = std::decay_t<decltype(pc)>;
        if constexpr (std::is_same_v<T, QuadraticPiece>) {
          if (!(pc.eps > 0.0 && pc.eps < 1.0)) {
            throw DomainError("quadratic piece needs eps in (0,1)");
          }
        } else if constexpr (std::is_same_v<T, PowerPiece>) {
          if (!(pc.a > 0.0 && pc.alpha > 0.0)) {
            throw DomainError("power piece needs a > 0 and alpha > 0");
          }
        } else {
          if (!std::isfinite(pc.log_A) || !std::isfinite(pc.log_B) || !(pc.beta > pc.alpha) ||
              !(pc.alpha > 0.0)) {
            throw DomainError("two-power piece needs finite A, B > 0 and beta > alpha > 0");
          }
        }
      },
      piece);
}

PsiDerivs eval_piece(const PsiPiece& piece, double xi) {
  return std::visit(
      [xi](const auto& pc) -> PsiDerivs {
        using T = std::decay_t<decltype(pc)>;
        if constexpr (std::is_same_v<T, QuadraticPiece>) {
          return {1.0 - pc.eps * xi * xi, -2.0 * pc.eps * xi, -2.0 * pc.eps};
        } else if constexpr (std::is_same_v<T, PowerPiece>) {
          const double v = pc.a * std::pow(xi, -pc.alpha);
          return {v, -pc.alpha * v / xi, pc.alpha * (pc.alpha + 1.0) * v / (xi * xi)};
        } else {
          const double lx = std::log(xi);
          const double ta = std::exp(pc.log_A - pc.alpha * lx);
          const double tb = std::exp(pc.log_B - pc.beta * lx);
          return {ta - tb, (-pc.alpha * ta + pc.beta * tb) / xi,
                  (pc.alpha * (pc.alpha + 1.0) * ta - pc.beta * (pc.beta + 1.0) * tb) / (xi * xi)};
        }
      },
      piece);
}

double eval_A(const ProblemParams& p, double kappa, const PsiDerivs& psi, double xi) {
  if (!(xi > 0.0)) {
    throw DomainError("eval_A: xi must be positive");
  }
  return (xi * xi + psi.value) * (psi.d2 + (p.n - 1.0) / xi * psi.d1) + 2.0 * kappa * psi.value -
         (p.mu + kappa) * xi * psi.d1 - p.mu / 2.0 * psi.d1 * psi.d1;
}

double eval_A_scale(const ProblemParams& p, double kappa, const PsiDerivs& psi, double xi) {
  const double s = xi * xi + psi.value;
  return std::max({std::abs(s * psi.d2), std::abs(s * (p.n - 1.0) / xi * psi.d1),
                   std::abs(2.0 * kappa * psi.value), std::abs((p.mu + kappa) * xi * psi.d1),
                   std::abs(p.mu / 2.0 * psi.d1 * psi.d1)});
}

double eval_A(const ProblemParams& p, double kappa, const PsiPiece& piece, double xi) {
  if (!(xi > 0.0)) {
    throw DomainError("eval_A: xi must be positive");
  }
  return eval_A(p, kappa, eval_piece(piece, xi), xi);
}

double tail_polynomial(const ProblemParams& p, double kappa, double beta) {
  return alpha_quadratic(p, kappa, beta);
}

double cross_polynomial(const ProblemParams& p, double alpha, double beta) {
  return -beta * (beta + 2.0 - p.n) - alpha * (alpha + 2.0 - p.n) + p.mu * alpha * beta;
}

double drift_coefficient(const ProblemParams& p, double x) {
  return (p.mu - 2.0) / 2.0 * x * x + (p.n - 2.0) * x;
}

double eval_A_closed_form(const ProblemParams& p, double kappa, const PsiPiece& piece, double xi,
                          double* scale) {
  if (!(xi > 0.0)) {
    throw DomainError("eval_A_closed_form: xi must be positive");
  }
  return std::visit(
      [&](const auto& pc) -> double {
        using T = std::decay_t<decltype(pc)>;
        if constexpr (std::is_same_v<T, QuadraticPiece>) {
          const double c = 2.0 * (kappa - p.n * pc.eps);
          const double s = 2.0 * (p.n - p.mu) * pc.eps * (1.0 - pc.eps) * xi * xi;
          if (scale) *scale = std::abs(c) + std::abs(s);
          return c - s;
        } else if constexpr (std::is_same_v<T, PowerPiece>) {
          const double first = tail_polynomial(p, kappa, pc.alpha) * pc.a * std::pow(xi, -pc.alpha);
          const double second =
              drift_coefficient(p, pc.alpha) * pc.a * pc.a * std::pow(xi, -2.0 * pc.alpha - 2.0);
          if (scale) *scale = std::abs(first) + std::abs(second);
          return first - second;
        } else {
          const double lx = std::log(xi);
          const double a_term = std::exp(pc.log_A - pc.alpha * lx);
          const double b_term = std::exp(pc.log_B - pc.beta * lx);
          const double terms[5] = {
              tail_polynomial(p, kappa, pc.alpha) * a_term,
              -tail_polynomial(p, kappa, pc.beta) * b_term,
              -drift_coefficient(p, pc.alpha) * a_term * a_term / (xi * xi),
              -drift_coefficient(p, pc.beta) * b_term * b_term / (xi * xi),
              cross_polynomial(p, pc.alpha, pc.beta) * a_term * b_term / (xi * xi),
          };
          double sum = 0.0;
          double abs_sum = 0.0;
          for (double term : terms) {
            sum += term;
            abs_sum += std::abs(term);
          }
          if (scale) *scale = abs_sum;
          return sum;
        }
      },
      piece);
}

}  // namespace fde
