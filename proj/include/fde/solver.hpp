#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fde/barriers.hpp"
#include "fde/grid.hpp"
#include "fde/params.hpp"

namespace fde {

/// Outer boundary treatment at r_max.
///   pin_singular    : v = r_max^{-mu}
///   pin_barrier_mid : v = midpoint of the sub- and super-barrier lifts at r_max
///   pin_initial     : v = v0(r_max) for all time
///   neumann         : no diffusive flux, drift flux mu r v through the boundary
enum class BoundaryMode { pin_singular, pin_barrier_mid, pin_initial, neumann };

std::string to_string(BoundaryMode mode);
/// Throws DomainError for an unknown name.
BoundaryMode boundary_mode_from_string(const std::string& name);

struct SolverConfig {
  double dt_init = 1e-4;
  double dt_max = 1e-2;
  double newton_tol = 1e-10;
  int newton_max_iter = 30;
  double t_end = 4.0;
  BoundaryMode boundary = BoundaryMode::pin_singular;
  double output_stride = 0.01;  // time between recorded snapshots
  std::vector<double> probes{5.0};
  bool adaptive = true;   // false keeps dt = dt_init (apart from output clipping)
  bool parallel = false;  // OpenMP assembly
  int max_halvings = 20;
};

/// Throws DomainError unless every field is positive, newton_tol >= 1e-13 and
/// probes lie strictly inside (r_1, r_max).
void validate(const SolverConfig& cfg, const Grid& g);

struct InitialData {
  RadialFunction v0;
  InitialDataInfo info;
};

/// v0 = 1 - c on [0,1] and r^{-mu} - c r^{-l} beyond, c = (c_lo + c_hi)/2.
/// Throws DomainError unless 0 < c < 1.
InitialData make_initial_data(const ProblemParams& p, const TailSpec& tail);

using BoundaryValue = std::function<double(double t)>;

struct SolverState {
  double t = 0.0;
  std::vector<double> v;  // node values, size n_nodes
};

struct StepStats {
  double dt_taken = 0.0;
  int newton_iterations = 0;
  int halvings = 0;
};

/// One implicit Euler step of size dt (halved on Newton failure up to
/// cfg.max_halvings times). Throws NewtonDivergence when out of halvings and
/// PositivityLoss for a non-positive state.
StepStats step(const ProblemParams& p, const Grid& g, const SolverConfig& cfg, SolverState& state,
               double dt, const BoundaryValue& bc);

struct RadialSolution {
  std::vector<double> r;
  std::vector<double> times;
  std::vector<std::vector<double>> fields;
  std::vector<double> sup_norm;  // v at r = 0
  std::vector<double> probe_radii;
  std::vector<std::vector<double>> probe_gap;  // [probe][time], r^{-mu} - v
  std::size_t steps = 0;
  std::size_t newton_iterations = 0;
  std::size_t halvings = 0;
  double min_value = 0.0;
  std::size_t sup_off_origin = 0;  // records whose maximum is not at r = 0
};

/// r^{-mu} - v at radius x (x > r_1), interpolating the relative gap 1 - r^mu v.
double gap_at(const ProblemParams& p, const std::vector<double>& r, const std::vector<double>& v,
              double x);

/// Integrates from v0 to cfg.t_end, recording at multiples of cfg.output_stride.
RadialSolution solve(const ProblemParams& p, const Grid& g, const SolverConfig& cfg,
                     const RadialFunction& v0, const BoundaryValue& bc);

/// Canonical datum for `tail`, boundary built from cfg.boundary.
RadialSolution solve(const ProblemParams& p, const TailSpec& tail, const Grid& g,
                     const SolverConfig& cfg, const BuildOptions& barrier_opts = {});

BoundaryValue make_boundary(const ProblemParams& p, const Grid& g, BoundaryMode mode,
                            const RadialFunction& v0, const TailSpec& tail,
                            const BuildOptions& barrier_opts = {});

struct ComparisonReport {
  bool identical = false;
  double max_violation = 0.0;  // max of (v_a - v_b)/v_b over all records
  std::size_t records = 0;
};

/// Solves from v0_a <= v0_b with the same boundary and checks the ordering at
/// every record. Throws DomainError if v0_a > v0_b at some node and
/// OrderingError (with the first violating t and r) if the ordering breaks.
ComparisonReport discrete_comparison(const ProblemParams& p, const Grid& g,
                                     const SolverConfig& cfg, const RadialFunction& v0_a,
                                     const RadialFunction& v0_b, const BoundaryValue& bc);

using ErrorField = std::vector<std::vector<double>>;  // [record][node], relative

struct SandwichReport {
  double max_sub_violation = 0.0;    // max (sub - v)/v
  double max_super_violation = 0.0;  // max (v - super)/v
  double max_excess = 0.0;           // max of violation - allowance, pointwise
  std::size_t checked = 0;

  [[nodiscard]] bool ok(double rel_tol) const {
    return max_sub_violation <= rel_tol && max_super_violation <= rel_tol;
  }
  /// Against the pointwise allowance passed to sandwich_check.
  [[nodiscard]] bool ok() const { return max_excess <= 0.0; }
};

/// Compares every recorded (t, r_i) with the two lifted barriers. With
/// `allowance`, max_excess is the worst violation minus allowance[k][i].
SandwichReport sandwich_check(const RadialSolution& sol, const PiecewiseBarrier& sub,
                              const PiecewiseBarrier& super, const ErrorField* allowance = nullptr);

/// Pointwise relative error estimate of `coarse`: |v - v_fine|/v_fine on the
/// shared nodes (fine grid = every second node, same record times) plus the
/// committed outer-boundary error c r_max^{-(l-mu)} e^{-lambda t}.
/// Throws DomainError if the grids or records do not nest.
ErrorField scheme_error_estimate(const ProblemParams& p, const TailSpec& tail,
                                 const RadialSolution& coarse, const RadialSolution& fine);

}  // namespace fde
