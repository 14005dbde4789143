#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fde/operators.hpp"
#include "fde/params.hpp"

namespace fde {

enum class Side { sub, super };

std::string to_string(Side side);

/// Scalars read off an initial datum v0 by the barrier constructions.
struct InitialDataInfo {
  double inf_on_unit_ball = 0.0;  // inf of v0 on [0,1]
  double sup_global = 0.0;        // sup of v0 on [0,inf)
  double gap_inner = 0.0;         // inf over (0,1] of r^{-mu} - v0(r)
  double c_lo = 0.0;              // v0 >= r^{-mu} - c_lo r^{-l} for r >= 1
  double c_hi = 0.0;              // v0 <= r^{-mu} - c_hi r^{-l} for r >= 1
  double l = 0.0;
};

/// One selected constant. `inequality` names the condition it was chosen to
/// satisfy and `slack` is the (positive) margin by which it holds.
struct SelectionEntry {
  std::string name;
  double value = 0.0;
  std::string inequality;
  double slack = 0.0;
};

struct SelectionReport {
  Side side = Side::sub;
  std::vector<SelectionEntry> inputs;   // scalars taken from the data, no inequality
  std::vector<SelectionEntry> entries;  // chosen constants with their constraints

  [[nodiscard]] bool all_slack_positive() const;
  /// Value of a named entry (inputs or entries); throws std::out_of_range.
  [[nodiscard]] double value(const std::string& name) const;
  /// Flat `name = value ; inequality ; slack` text block.
  [[nodiscard]] std::string serialize() const;
};

/// Glued profile psi: quadratic core on [0, corner], `outer` beyond, lifted to
/// v(r,t) = sigma(t) (xi^2 + psi(xi))^{-mu/2}, sigma = sigma0 e^{mu kappa t},
/// xi = sigma^{1/mu} r.
class PiecewiseBarrier {
 public:
  PiecewiseBarrier(Side side, const ProblemParams& p, const TailSpec& tail, double kappa,
                   QuadraticPiece inner, PsiPiece outer, double corner, double sigma0);

  [[nodiscard]] Side side() const { return side_; }
  [[nodiscard]] const ProblemParams& params() const { return params_; }
  [[nodiscard]] const TailSpec& tail() const { return tail_; }
  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] double corner() const { return corner_; }
  [[nodiscard]] double sigma0() const { return sigma0_; }
  [[nodiscard]] const QuadraticPiece& inner() const { return inner_; }
  [[nodiscard]] const PsiPiece& outer() const { return outer_; }

  /// Same barrier with sigma0 replaced.
  [[nodiscard]] PiecewiseBarrier with_sigma0(double sigma0) const;

  /// psi itself is continuous, so this is defined everywhere on [0, inf).
  [[nodiscard]] double psi(double xi) const;
  /// Derivatives off the corner; throws CornerError within 1e-12 relative of it.
  [[nodiscard]] PsiDerivs psi_derivs(double xi) const;
  [[nodiscard]] bool near_corner(double xi, double rel_tol) const;
  [[nodiscard]] double slope_left() const;
  [[nodiscard]] double slope_right() const;

  [[nodiscard]] double sigma(double t) const;
  [[nodiscard]] double xi(double r, double t) const;
  [[nodiscard]] double corner_radius(double t) const;

 private:
  Side side_;
  ProblemParams params_;
  TailSpec tail_;
  double kappa_;
  QuadraticPiece inner_;
  PsiPiece outer_;
  double corner_;
  double sigma0_;
};

double eval_A(const PiecewiseBarrier& b, double xi);

/// Space-time barrier value; at r = 0 this is sigma(t) since psi(0) = 1.
double lift(const PiecewiseBarrier& b, double r, double t);
/// Analytic derivatives of the lifted barrier (off the corner curve).
Jet lift_jet(const PiecewiseBarrier& b, double r, double t);
/// (mu/2) sigma (xi^2+psi)^{-mu/2-1} A psi(xi) at xi = xi(r,t).
double lift_identity_rhs(const PiecewiseBarrier& b, double r, double t);

struct BuildOptions {
  TailRange range = TailRange::theorem;
  double a_start = 1.0;     // first trial amplitude of the sub-barrier tail
  double margin = 0.99;     // multiplicative safety factor on extremal constants
  int max_iterations = 200;
};

struct BarrierBuild {
  PiecewiseBarrier barrier;
  SelectionReport report;
};

/// Quadratic core glued to a xi^{-alpha}, alpha = l-mu-2; A psi <= 0 off the corner.
BarrierBuild build_subsolution(const ProblemParams& p, const TailSpec& tail,
                               const InitialDataInfo& info, const BuildOptions& opts = {});

/// Quadratic core glued to A xi^{-alpha} - B xi^{-beta}, alpha = alpha_minus;
/// A psi >= 0 off the corner.
BarrierBuild build_supersolution(const ProblemParams& p, const TailSpec& tail,
                                 const InitialDataInfo& info, const BuildOptions& opts = {});

/// Feasible interval (alpha, upper) for the second tail exponent together with the
/// chosen midpoint.
struct BetaWindow {
  double lower = 0.0;
  double upper = 0.0;
  double beta = 0.0;
};
BetaWindow select_beta_out(const ProblemParams& p, double kappa, double alpha, double alpha_plus,
                           int scan_points = 10000);

struct CertificateOptions {
  std::size_t n_points = 10000;
  double corner_exclusion = 1e-9;  // relative neighbourhood of the corner skipped
  double xi_lo = 0.0;              // 0 selects 1e-4 min(1, corner)
  double xi_hi = 0.0;              // 0 selects max(1e3, 1e3 corner)
  bool parallel = true;
};

struct CertificateReport {
  Side side = Side::sub;
  std::vector<double> xi;
  std::vector<double> a_psi;  // NaN at excluded points
  std::size_t excluded = 0;
  std::size_t sign_violations = 0;
  double worst_value = 0.0;  // max A psi (sub) or min A psi (super) over the grid
  double slope_left = 0.0;
  double slope_right = 0.0;
  bool jump_ok = false;
  double continuity_gap = 0.0;  // |inner - outer| / |inner| at the corner
  double min_psi = 0.0;
  double min_denominator = 0.0;  // min of xi^2 + psi
  bool slack_ok = false;

  [[nodiscard]] bool passed() const;
};

/// log-spaced grid on [lo, hi] with `count` points.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

CertificateReport certify(const PiecewiseBarrier& b, const SelectionReport& report,
                          const CertificateOptions& opts = {});

struct OrderingReport {
  Side side = Side::sub;
  std::size_t n_points = 0;
  double max_violation = 0.0;  // max of lift - v0 (sub) or v0 - lift (super)
  double tolerance = 1e-12;
  std::vector<double> violating_radii;

  [[nodiscard]] bool ok() const { return max_violation <= tolerance; }
  /// Throws OrderingError listing (up to ten) violating radii.
  void require() const;
};

using RadialFunction = std::function<double(double r)>;

/// sub: lift(r,0) <= v0(r); super: lift(r,0) >= v0(r), on the given radii.
OrderingReport initial_ordering_check(const PiecewiseBarrier& b, const RadialFunction& v0,
                                      std::span<const double> radii, double tolerance = 1e-12);

/// r = 0 followed by count-1 log-spaced radii in [1e-4, r_hi].
std::vector<double> ordering_radii(double r_hi = 1e3, std::size_t count = 10000);

}  // namespace fde
