#include "fde/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fde/errors.hpp"
#include "fde/kernels.hpp"

namespace fde {

namespace {

constexpr double kCornerTol = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void add(SelectionReport& rep, std::string name, double value, std::string inequality,
         double slack) {
  rep.entries.push_back({std::move(name), value, std::move(inequality), slack});
}

void add_input(SelectionReport& rep, std::string name, double value) {
  rep.inputs.push_back({std::move(name), value, "input", 0.0});
}

// Bisection on [lo, hi] for f with f(lo) > 0 > f(hi).
template <class F>
double bisect(F f, double lo, double hi, int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Quarter-octave ladder 2^{k/4}.
double ladder(int k) { return std::exp2(0.25 * k); }

double ladder_below(double bound, int max_steps) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw ConstructionError("sigma0 bound is not a positive finite number");
  }
  int k = static_cast<int>(std::floor(4.0 * std::log2(bound)));
  for (int i = 0; i < max_steps && ladder(k) >= bound; ++i) --k;
  if (ladder(k) >= bound) throw ConstructionError("no admissible sigma0 below the bound");
  return ladder(k);
}

double ladder_above(double bound, int max_steps) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw ConstructionError("sigma0 bound is not a positive finite number");
  }
  int k = static_cast<int>(std::ceil(4.0 * std::log2(bound)));
  for (int i = 0; i < max_steps && ladder(k) <= bound; ++i) ++k;
  if (ladder(k) <= bound) throw ConstructionError("no admissible sigma0 above the bound");
  return ladder(k);
}

void check_info(const InitialDataInfo& info) {
  if (!(info.inf_on_unit_ball > 0.0) || !(info.sup_global > 0.0) || !(info.gap_inner > 0.0) ||
      !(info.c_lo > 0.0 && info.c_lo < 1.0) || !(info.c_hi > 0.0)) {
    throw DomainError("initial data info: all scalars must be positive and c_lo < 1");
  }
}

}  // namespace

std::string to_string(Side side) { return side == Side::sub ? "sub" : "super"; }

bool SelectionReport::all_slack_positive() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SelectionEntry& e) { return e.slack > 0.0; });
}

double SelectionReport::value(const std::string& name) const {
  for (const auto* list : {&inputs, &entries}) {
    for (const auto& e : *list) {
      if (e.name == name) return e.value;
    }
  }
  throw std::out_of_range("no selection entry named " + name);
}

std::string SelectionReport::serialize() const {
  std::ostringstream os;
  os << "side = " << to_string(side) << '\n';
  for (const auto& e : inputs) os << e.name << " = " << fmt(e.value) << " ; input\n";
  for (const auto& e : entries) {
    os << e.name << " = " << fmt(e.value) << " ; " << e.inequality << " ; slack " << fmt(e.slack)
       << '\n';
  }
  return os.str();
}

PiecewiseBarrier::PiecewiseBarrier(Side side, const ProblemParams& p, const TailSpec& tail,
                                   double kappa, QuadraticPiece inner, PsiPiece outer,
                                   double corner, double sigma0)
    : side_(side),
      params_(p),
      tail_(tail),
      kappa_(kappa),
      inner_(inner),
      outer_(outer),
      corner_(corner),
      sigma0_(sigma0) {
  validate_piece(inner_);
  validate_piece(outer_);
  if (!(corner_ > 0.0) || !std::isfinite(corner_)) {
    throw DomainError("barrier corner must be positive and finite");
  }
  if (!(sigma0_ > 0.0) || !std::isfinite(sigma0_)) {
    throw DomainError("barrier sigma0 must be positive and finite");
  }
}

PiecewiseBarrier PiecewiseBarrier::with_sigma0(double sigma0) const {
  return PiecewiseBarrier(side_, params_, tail_, kappa_, inner_, outer_, corner_, sigma0);
}

double PiecewiseBarrier::psi(double xi) const {
  if (xi <= corner_) return 1.0 - inner_.eps * xi * xi;
  return eval_piece(outer_, xi).value;
}

bool PiecewiseBarrier::near_corner(double xi, double rel_tol) const {
  return std::abs(xi - corner_) <= rel_tol * corner_;
}

PsiDerivs PiecewiseBarrier::psi_derivs(double xi) const {
  if (near_corner(xi, kCornerTol)) {
    throw CornerError("psi is not differentiable at the corner xi = " + fmt(corner_));
  }
  if (xi < corner_) return eval_piece(inner_, xi);
  return eval_piece(outer_, xi);
}

double PiecewiseBarrier::slope_left() const { return -2.0 * inner_.eps * corner_; }
double PiecewiseBarrier::slope_right() const { return eval_piece(outer_, corner_).d1; }

double PiecewiseBarrier::sigma(double t) const {
  return sigma0_ * std::exp(params_.mu * kappa_ * t);
}

double PiecewiseBarrier::xi(double r, double t) const {
  return std::pow(sigma(t), 1.0 / params_.mu) * r;
}

double PiecewiseBarrier::corner_radius(double t) const {
  return corner_ * std::pow(sigma(t), -1.0 / params_.mu);
}

double eval_A(const PiecewiseBarrier& b, double xi) {
  if (!(xi > 0.0)) throw DomainError("eval_A: xi must be positive");
  return eval_A(b.params(), b.kappa(), b.psi_derivs(xi), xi);
}

double lift(const PiecewiseBarrier& b, double r, double t) {
  const double s = b.sigma(t);
  const double x = std::pow(s, 1.0 / b.params().mu) * r;
  return s * std::pow(x * x + b.psi(x), -b.params().mu / 2.0);
}

Jet lift_jet(const PiecewiseBarrier& b, double r, double t) {
  const auto& p = b.params();
  const double mu = p.mu;
  const double s = b.sigma(t);
  const double s_pow = std::pow(s, 1.0 / mu);
  const double x = s_pow * r;
  const PsiDerivs d = b.psi_derivs(x);
  const double S = x * x + d.value;
  const double S1 = 2.0 * x + d.d1;  // dS/dxi
  const double S2 = 2.0 + d.d2;
  const double k = mu / 2.0;
  const double base = std::pow(S, -k);

  Jet j;
  j.v = s * base;
  // d/dxi of S^{-k}
  const double g1 = -k * base / S * S1;
  const double g2 = k * (k + 1.0) * base / (S * S) * S1 * S1 - k * base / S * S2;
  j.v_r = s * s_pow * g1;
  j.v_rr = s * s_pow * s_pow * g2;
  // sigma' = mu kappa sigma, xi_t = kappa xi
  j.v_t = mu * b.kappa() * s * base + s * g1 * b.kappa() * x;
  return j;
}

double lift_identity_rhs(const PiecewiseBarrier& b, double r, double t) {
  const double mu = b.params().mu;
  const double s = b.sigma(t);
  const double x = std::pow(s, 1.0 / mu) * r;
  const double S = x * x + b.psi(x);
  return mu / 2.0 * s * std::pow(S, -mu / 2.0 - 1.0) * eval_A(b, x);
}

BarrierBuild build_subsolution(const ProblemParams& p, const TailSpec& tail,
                               const InitialDataInfo& info, const BuildOptions& opts) {
  validate_tail(p, tail, opts.range);
  check_info(info);
  if (!(opts.a_start > 0.0) || !(opts.margin > 0.0 && opts.margin < 1.0)) {
    throw DomainError("build options: a_start > 0 and margin in (0,1) required");
  }
  const double l = tail.l;
  const double mu = p.mu;
  const double kappa = kappa_of(p, l);
  const double alpha = l - mu - 2.0;
  const double eps = kappa / p.n;
  const double margin = opts.margin;

  SelectionReport rep;
  rep.side = Side::sub;
  add_input(rep, "sub.c0", info.c_lo);
  add_input(rep, "sub.c1", info.inf_on_unit_ball);
  add_input(rep, "sub.kappa", kappa);
  add_input(rep, "sub.alpha", alpha);
  add(rep, "sub.eps", eps, "0 < eps = kappa/n < 1", std::min(eps, 1.0 - eps));

  const double bracket = std::pow(2.0 * eps / alpha, alpha / (alpha + 2.0)) +
                         eps * std::pow(alpha / (2.0 * eps), 2.0 / (alpha + 2.0));
  double a = opts.a_start;
  double lhs = bracket * std::pow(a, 2.0 / (alpha + 2.0));
  for (int i = 0; i < opts.max_iterations && !(lhs < 1.0); ++i) {
    a *= 0.5;
    lhs = bracket * std::pow(a, 2.0 / (alpha + 2.0));
  }
  if (!(lhs < 1.0)) throw ConstructionError("sub: no amplitude a makes phi(xi_min) negative");
  add(rep, "sub.a", a, "phi(xi_min) < 0, i.e. bracket * a^{2/(alpha+2)} < 1", 1.0 - lhs);

  const double xi_min = std::pow(alpha * a / (2.0 * eps), 1.0 / (alpha + 2.0));
  add(rep, "sub.xi_min", xi_min, "phi(xi_min) < 0", 1.0 - lhs);

  auto phi = [&](double x) { return a * std::pow(x, -alpha) - 1.0 + eps * x * x; };
  double lo = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < opts.max_iterations && !(phi(lo) > 0.0); ++i) lo *= 1e-3;
  if (!(phi(lo) > 0.0) || !(phi(xi_min) < 0.0)) {
    throw ConstructionError("sub: cannot bracket the first zero of phi");
  }
  const double xi0 = bisect(phi, lo, xi_min, opts.max_iterations);
  const double dphi = -alpha * a * std::pow(xi0, -alpha - 1.0) + 2.0 * eps * xi0;
  add(rep, "sub.xi0", xi0, "phi(xi0) = 0 with phi'(xi0) < 0", -dphi);

  PiecewiseBarrier barrier(Side::sub, p, tail, kappa, QuadraticPiece{eps}, PowerPiece{a, alpha},
                           xi0, 1.0);
  add(rep, "sub.corner_jump", barrier.slope_left() - barrier.slope_right(),
      "psi'(xi0-) > psi'(xi0+)", barrier.slope_left() - barrier.slope_right());

  const double c0 = info.c_lo;
  const double c1 = info.inf_on_unit_ball;
  const double c2_bound = std::pow(1.0 - c0, -2.0 / mu) - 1.0;
  const double c2 = c2_bound / margin;
  add(rep, "sub.c2", c2, "(1+c2)^{-mu/2} <= 1-c0", (1.0 - c0) - std::pow(1.0 + c2, -mu / 2.0));

  // xi^{-2} psi is strictly decreasing, from +inf to 0.
  auto ratio = [&](double x) { return barrier.psi(x) / (x * x); };
  double hi = std::max(1.0, xi0);
  for (int i = 0; i < opts.max_iterations && !(ratio(hi) < c2); ++i) hi *= 2.0;
  double lo2 = std::min(1.0, xi0);
  for (int i = 0; i < opts.max_iterations && !(ratio(lo2) > c2); ++i) lo2 *= 0.5;
  if (!(ratio(hi) < c2) || !(ratio(lo2) > c2)) {
    throw ConstructionError("sub: cannot bracket xi^{-2} psi = c2");
  }
  const double xi_hat =
      margin * bisect([&](double x) { return ratio(x) - c2; }, lo2, hi, opts.max_iterations);
  add(rep, "sub.xi_hat", xi_hat, "xi^{-2} psi >= c2 on (0, xi_hat)", ratio(xi_hat) - c2);

  const double z0 = ratio(xi_hat);
  add(rep, "sub.z0", z0, "z0 = max of xi^{-2} psi on [xi_hat, inf)", z0);

  const double chord = (1.0 - std::pow(1.0 + z0, -mu / 2.0)) / z0;
  const double c3 = margin * chord;
  add(rep, "sub.c3", c3, "(1+z)^{-mu/2} <= 1 - c3 z on [0, z0]", chord - c3);

  // min of xi^2 + psi: 1 at the origin, the corner, or the interior critical
  // point of xi^2 + a xi^{-alpha}.
  double min_s = std::min(1.0, xi0 * xi0 + barrier.psi(xi0));
  const double xi_crit = std::pow(alpha * a / 2.0, 1.0 / (alpha + 2.0));
  if (xi_crit > xi0) min_s = std::min(min_s, xi_crit * xi_crit + barrier.psi(xi_crit));
  const double c4 = margin * min_s;
  add(rep, "sub.c4", c4, "xi^2 + psi >= c4 on [0, inf)", min_s - c4);

  // xi^alpha psi equals a beyond xi0; on [xi_hat, xi0] the concave core attains
  // its minimum at an endpoint.
  double min_tail = a;
  if (xi_hat < xi0) min_tail = std::min(a, std::pow(xi_hat, alpha) * barrier.psi(xi_hat));
  const double c5 = margin * min_tail;
  add(rep, "sub.c5", c5, "psi >= c5 xi^{-alpha} on [xi_hat, inf)", min_tail - c5);

  const double bound_core = c1 * std::pow(c4, mu / 2.0);
  const double bound_tail = std::pow(c3 * c5 / c0, mu / (l - mu));
  const double sigma0 = ladder_below(std::min(bound_core, bound_tail), 4 * opts.max_iterations);
  add(rep, "sub.sigma0", sigma0, "sigma0 <= c1 c4^{mu/2}", bound_core - sigma0);
  add(rep, "sub.sigma0_tail", sigma0, "sigma0 <= (c3 c5 / c0)^{mu/(l-mu)}", bound_tail - sigma0);

  return {barrier.with_sigma0(sigma0), std::move(rep)};
}

BetaWindow select_beta_out(const ProblemParams& p, double kappa, double alpha, double alpha_plus,
                           int scan_points) {
  const double upper = std::min(alpha_plus, 2.0 * alpha + 2.0);
  if (!(upper > alpha)) {
    throw ConstructionError("no room for a second tail exponent: alpha_+ = alpha_-");
  }
  auto feasible = [&](double beta) {
    return tail_polynomial(p, kappa, beta) < 0.0 && cross_polynomial(p, alpha, beta) > 0.0;
  };
  const double h = (upper - alpha) / scan_points;
  double last_ok = std::numeric_limits<double>::quiet_NaN();
  double first_bad = upper;
  bool closed = true;
  for (int i = 1; i <= scan_points; ++i) {
    const double beta = alpha + h * i;
    if (feasible(beta)) {
      last_ok = beta;
    } else if (!std::isnan(last_ok)) {
      first_bad = beta;
      closed = false;
      break;
    } else if (i > scan_points / 100) {
      break;
    }
  }
  if (std::isnan(last_ok)) {
    throw ConstructionError("no beta in (alpha, min(alpha_+, 2 alpha + 2)] with p < 0 < q");
  }
  double hi = upper;
  if (!closed) {
    double lo = last_ok;
    double bad = first_bad;
    for (int i = 0; i < 200 && bad - lo > 1e-15 * bad; ++i) {
      const double mid = 0.5 * (lo + bad);
      (feasible(mid) ? lo : bad) = mid;
    }
    hi = lo;
  } else if (!feasible(upper)) {
    hi = last_ok;
  }
  return {alpha, hi, 0.5 * (alpha + hi)};
}

BarrierBuild build_supersolution(const ProblemParams& p, const TailSpec& tail,
                                 const InitialDataInfo& info, const BuildOptions& opts) {
  validate_tail(p, tail, opts.range);
  check_info(info);
  if (!(opts.margin > 0.0 && opts.margin < 1.0)) {
    throw DomainError("build options: margin in (0,1) required");
  }
  const double l = tail.l;
  const double mu = p.mu;
  const double n = p.n;
  const RateSet rates = derive_rates(p, l);
  const double kappa = rates.kappa;
  const double alpha = rates.alpha_minus;
  const double margin = opts.margin;

  SelectionReport rep;
  rep.side = Side::super;
  add_input(rep, "super.c_hi", info.c_hi);
  add_input(rep, "super.sup_v0", info.sup_global);
  add_input(rep, "super.gap_inner", info.gap_inner);
  add_input(rep, "super.kappa", kappa);
  add_input(rep, "super.alpha", alpha);

  const BetaWindow win = select_beta_out(p, kappa, alpha, rates.alpha_plus);
  const double beta = win.beta;
  const double p_neg = -tail_polynomial(p, kappa, beta);
  const double q_beta = cross_polynomial(p, alpha, beta);
  add(rep, "super.beta_out", beta, "p(beta) < 0", p_neg);
  add(rep, "super.q_beta", q_beta, "q(beta) > 0", q_beta);
  add(rep, "super.beta_cap", beta, "beta <= 2 alpha + 2", 2.0 * alpha + 2.0 - beta);

  const double c1 = p_neg;
  const double c2 = drift_coefficient(p, alpha);
  const double c3 = drift_coefficient(p, beta);
  add(rep, "super.p_neg", c1, "c1 = -p(beta) > 0", c1);
  add(rep, "super.drift_alpha", c2, "c2 = drift(alpha) > 0", c2);
  add(rep, "super.drift_beta", c3, "c3 = drift(beta) > 0", c3);

  const double d = beta - alpha;
  const double log_ab = std::log(alpha / beta);
  const double log_cb13 = d * std::log(2.0 * c2 / c1) + (2.0 * alpha + 2.0 - beta) * log_ab;
  const double log_cb14 = d * std::log(2.0 * c3 / c1) + (beta + 2.0) * log_ab;
  const double log_cb = std::log(2.0) + std::max(log_cb13, log_cb14);
  add(rep, "super.C_beta", std::exp(log_cb), "quadratic A-term <= half the linear B-term",
      1.0 - std::exp((log_cb13 - log_cb) / d));
  add(rep, "super.C_beta_b", std::exp(log_cb), "quadratic B-term <= half the linear B-term",
      1.0 - std::exp((log_cb14 - log_cb) / d));

  const double q_cap = std::sqrt(kappa / (2.0 * (n - mu)));
  const double qf = std::min(0.5, margin * q_cap);
  add(rep, "super.q_frac", qf, "q_frac <= sqrt(kappa/(2(n-mu))), q_frac < 1", q_cap - qf);

  const double log_comb = alpha / d * log_ab + std::log1p(-alpha / beta);
  const double comb = std::exp(log_comb);
  add(rep, "super.comb", comb, "comb > 0", comb);

  const double log_K = d * (std::log1p(-qf * qf) - log_comb);
  add(rep, "super.K", std::exp(log_K), "K > 0", std::exp(log_K));

  const double lb34 = alpha / 2.0 *
                      (std::log(2.0 * n / kappa) + 2.0 * std::log(qf) + 2.0 / d * log_ab +
                       2.0 / (alpha * d) * log_K);
  const double lb35 = alpha / (2.0 * d) * (log_cb + (alpha + 2.0) / alpha * log_K);
  const double log_A = std::log(2.0) + std::max(lb34, lb35);
  add(rep, "super.A_out", std::exp(log_A), "A >= core bound (eps <= kappa/(2n))",
      1.0 - std::exp(lb34 - log_A));
  add(rep, "super.A_out_cb", std::exp(log_A), "A >= tail bound (B^{alpha+2}/A^{beta+2} >= C_beta)",
      1.0 - std::exp(lb35 - log_A));

  const double log_B = (beta * log_A - log_K) / alpha;
  const double log_eps = 2.0 * std::log(qf) + 2.0 / d * (log_ab + log_A - log_B);
  const double eps = std::exp(log_eps);
  const double log_xi1 = (std::log(beta / alpha) + log_B - log_A) / d;
  const double xi1 = std::exp(log_xi1);
  add(rep, "super.B_out", std::exp(log_B), "B = (A^beta / K)^{1/alpha}",
      (alpha + 2.0) * log_B - (beta + 2.0) * log_A - log_cb);
  add(rep, "super.eps", eps, "eps <= kappa/(2n)", kappa / (2.0 * n) - eps);
  add(rep, "super.xi1", xi1, "eps xi1^2 = q_frac^2 < 1", 1.0 - eps * xi1 * xi1);

  TwoPowerPiece outer{log_A, log_B, alpha, beta};
  PiecewiseBarrier barrier(Side::super, p, tail, kappa, QuadraticPiece{eps}, outer, xi1, 1.0);
  add(rep, "super.corner_jump", barrier.slope_right() - barrier.slope_left(),
      "psi'(xi1-) < psi'(xi1+)", barrier.slope_right() - barrier.slope_left());

  // sup of xi^alpha psi: the outer piece increases to A; the core peaks at an
  // interior critical point or at xi1.
  const double A = std::exp(log_A);
  double core_sup = std::pow(xi1, alpha) * (1.0 - qf * qf);
  const double xc = std::sqrt(alpha / (eps * (alpha + 2.0)));
  if (xc < xi1) core_sup = std::max(core_sup, std::pow(xc, alpha) * 2.0 / (alpha + 2.0));
  const double sup_tail = std::max(A, core_sup);
  const double s_c2 = sup_tail / margin;
  add(rep, "super.c2", s_c2, "xi^alpha psi <= c2 on [0, inf)", 1.0 - sup_tail / s_c2);

  const double s_c3 = info.sup_global / margin;
  add(rep, "super.c3", s_c3, "v0 <= c3", s_c3 - info.sup_global);

  const double r0_cap = std::pow(2.0 * s_c3, -1.0 / mu);
  const double r0 = margin * r0_cap;
  add(rep, "super.r0", r0, "r0 <= (2 c3)^{-1/mu}", r0_cap - r0);

  const double c4_cap = std::min(info.c_hi, info.gap_inner * std::pow(std::min(r0, 1.0), l));
  const double s_c4 = margin * c4_cap;
  add(rep, "super.c4", s_c4, "v0 <= r^{-mu} - c4 r^{-l} for r >= r0", c4_cap - s_c4);

  const double xh_cap = std::pow(mu * s_c2, 1.0 / (alpha + 2.0));
  const double xi_hat = xh_cap / margin;
  add(rep, "super.xi_hat", xi_hat, "xi_hat >= (mu c2)^{1/(alpha+2)}", xi_hat - xh_cap);

  // max of xi^2 + psi on [0, xi_hat]: the core part is increasing, the outer
  // part is sampled densely.
  double max_s = 0.0;
  {
    const double x_in = std::min(xi_hat, xi1);
    max_s = x_in * x_in + barrier.psi(x_in);
    if (xi_hat > xi1) {
      const int samples = 4096;
      for (int i = 0; i <= samples; ++i) {
        const double x = xi1 + (xi_hat - xi1) * i / samples;
        max_s = std::max(max_s, x * x + barrier.psi(x));
      }
    }
  }
  const double s_c5 = max_s / margin;
  add(rep, "super.c5", s_c5, "xi^2 + psi <= c5 on [0, xi_hat]", s_c5 - max_s);

  const double bound_core = s_c3 * std::pow(s_c5, mu / 2.0);
  const double bound_tail = std::pow(mu * s_c2 / (2.0 * s_c4), mu / (l - mu));
  const double sigma0 = ladder_above(std::max(bound_core, bound_tail), 4 * opts.max_iterations);
  add(rep, "super.sigma0", sigma0, "sigma0 >= c3 c5^{mu/2}", sigma0 - bound_core);
  add(rep, "super.sigma0_tail", sigma0, "sigma0 >= (mu c2 / (2 c4))^{mu/(l-mu)}",
      sigma0 - bound_tail);

  return {barrier.with_sigma0(sigma0), std::move(rep)};
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw DomainError("log_grid: need 0 < lo < hi and at least two points");
  }
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

bool CertificateReport::passed() const {
  return sign_violations == 0 && jump_ok && continuity_gap <= 1e-12 && min_psi > 0.0 &&
         min_denominator > 0.0 && slack_ok;
}

CertificateReport certify(const PiecewiseBarrier& b, const SelectionReport& report,
                          const CertificateOptions& opts) {
  CertificateReport out;
  out.side = b.side();
  const double xc = b.corner();
  const double lo = opts.xi_lo > 0.0 ? opts.xi_lo : 1e-4 * std::min(1.0, xc);
  const double hi = opts.xi_hi > 0.0 ? opts.xi_hi : std::max(1e3, 1e3 * xc);
  out.xi = log_grid(lo, hi, opts.n_points);
  out.a_psi.resize(out.xi.size());
  if (opts.parallel) {
    kernels::sweep_A_omp(b, out.xi, out.a_psi, opts.corner_exclusion);
  } else {
    kernels::sweep_A_serial(b, out.xi, out.a_psi, opts.corner_exclusion);
  }

  const bool sub = b.side() == Side::sub;
  out.worst_value = sub ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  out.min_psi = std::numeric_limits<double>::infinity();
  out.min_denominator = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.xi.size(); ++i) {
    const double x = out.xi[i];
    const double ps = b.psi(x);
    out.min_psi = std::min(out.min_psi, ps);
    out.min_denominator = std::min(out.min_denominator, x * x + ps);
    const double a = out.a_psi[i];
    if (std::isnan(a)) {
      ++out.excluded;
      continue;
    }
    if (sub) {
      out.worst_value = std::max(out.worst_value, a);
      if (a > 0.0) ++out.sign_violations;
    } else {
      out.worst_value = std::min(out.worst_value, a);
      if (a < 0.0) ++out.sign_violations;
    }
  }
  out.min_psi = std::min(out.min_psi, b.psi(0.0));
  out.min_denominator = std::min(out.min_denominator, b.psi(0.0));

  out.slope_left = b.slope_left();
  out.slope_right = b.slope_right();
  out.jump_ok = sub ? out.slope_left > out.slope_right : out.slope_left < out.slope_right;
  const double in_val = 1.0 - b.inner().eps * xc * xc;
  const double out_val = eval_piece(b.outer(), xc).value;
  out.continuity_gap = std::abs(in_val - out_val) / std::abs(in_val);
  out.slack_ok = report.all_slack_positive();
  return out;
}

void OrderingReport::require() const {
  if (ok()) return;
  std::ostringstream os;
  os << to_string(side) << "-barrier ordering violated (max " << fmt(max_violation) << ") at r =";
  const std::size_t shown = std::min<std::size_t>(violating_radii.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) os << ' ' << fmt(violating_radii[i]);
  if (violating_radii.size() > shown) os << " ...";
  throw OrderingError(os.str());
}

OrderingReport initial_ordering_check(const PiecewiseBarrier& b, const RadialFunction& v0,
                                      std::span<const double> radii, double tolerance) {
  OrderingReport rep;
  rep.side = b.side();
  rep.n_points = radii.size();
  rep.tolerance = tolerance;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const double w = lift(b, r, 0.0);
    const double u = v0(r);
    const double viol = b.side() == Side::sub ? w - u : u - w;
    rep.max_violation = std::max(rep.max_violation, viol);
    if (viol > tolerance) rep.violating_radii.push_back(r);
  }
  return rep;
}

std::vector<double> ordering_radii(double r_hi, std::size_t count) {
  if (count < 2) throw DomainError("ordering_radii: need at least two points");
  std::vector<double> out;
  out.reserve(count);
  out.push_back(0.0);
  const auto rest = log_grid(1e-4, r_hi, count - 1);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace fde
