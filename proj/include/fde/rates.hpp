#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fde/barriers.hpp"
#include "fde/params.hpp"
#include "fde/rescale.hpp"
#include "fde/solver.hpp"

namespace fde {

struct FitWindow {
  double t_lo = 1.0;
  double t_hi = 4.0;
};

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
};

/// Least-squares line y = intercept + exponent x. Throws FitError with fewer than
/// `min_samples` points or a degenerate abscissa.
RateFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::size_t min_samples = 10);

/// Slope of log(values) against times restricted to the window.
RateFit fit_log_linear(std::span<const double> times, std::span<const double> values,
                       const FitWindow& w);

/// log ||v||_inf against t.
RateFit fit_growup(const RadialSolution& sol, const FitWindow& w);

/// log(r^{-mu} - v(r,t)) against t at r_probe (interpolated from the stored
/// fields). Throws GapSignError if the gap is not positive inside the window.
RateFit fit_outer_decay(const ProblemParams& p, const RadialSolution& sol, double r_probe,
                        const FitWindow& w);

/// log ||u||_inf against log(T - tau); exponent is theta.
RateFit fit_extinction(const ProblemParams& p, const RadialSolution& sol,
                       const PhysicalFrame& frame, const FitWindow& w);

struct Tolerances {
  double gamma = 0.10;
  double lambda = 0.15;
  double theta = 0.05;
};

struct RateRow {
  double l = 0.0;
  double kappa = 0.0;
  double gamma_pred = 0.0;
  double gamma_fit = 0.0;
  double lambda_pred = 0.0;
  double lambda_fit = 0.0;  // decay rate, i.e. minus the fitted slope
  double theta_pred = 0.0;
  double theta_fit = 0.0;
  bool boundary_ok = false;
  double boundary_shift = 0.0;  // |gamma_fit(2 r_max) - gamma_fit(r_max)|
  double boundary_tol = 0.0;
  RateFit growup;
  RateFit decay;
  RateFit extinction;
  std::string error;  // non-empty when the row failed

  [[nodiscard]] bool within(const Tolerances& tol) const;
};

struct RateTableConfig {
  TailSpec tail;  // l is overwritten per row
  double r_max = 40.0;
  std::size_t n_cells = 800;
  double ratio = 1.02;
  SolverConfig solver;
  FitWindow window;
  double r_probe = 5.0;
  BuildOptions barriers;
  bool boundary_gate = true;
};

/// Fits for one tail exponent: a solve at r_max plus the gate rerun at 2 r_max.
/// Solutions are returned through the optional pointers.
RateRow rate_row(const ProblemParams& p, double l, const RateTableConfig& cfg,
                 RadialSolution* main_run = nullptr, RadialSolution* gate_run = nullptr);

/// Rows in input order; solved in parallel, failures captured per row.
std::vector<RateRow> rate_table(const ProblemParams& p, std::span<const double> l_list,
                                const RateTableConfig& cfg,
                                std::vector<RadialSolution>* runs = nullptr);

/// Header `l,kappa,gamma_pred,gamma_fit,lambda_pred,lambda_fit,theta_pred,theta_fit,boundary_ok`.
std::string rates_csv(std::span<const RateRow> rows);

}  // namespace fde
