#include "fde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fde/errors.hpp"
#include "fde/kernels.hpp"

namespace fde {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool dirichlet(BoundaryMode mode) { return mode != BoundaryMode::neumann; }

// Newton iteration for one implicit step; false if it failed to converge.
bool newton(const ProblemParams& p, const Grid& g, const SolverConfig& cfg,
            const std::vector<double>& v_old, double dt, double bc_value,
            std::vector<double>& v, int& iterations) {
  const std::size_t N = g.n_cells();
  const bool pinned = dirichlet(cfg.boundary);
  const std::size_t unknowns = pinned ? N : N + 1;
  v = v_old;
  if (pinned) v[N] = bc_value;

  kernels::Workspace ws;
  kernels::Assembly in{&p, &g, v, v_old, dt, unknowns, !pinned};
  for (int it = 1; it <= cfg.newton_max_iter; ++it) {
    iterations = it;
    if (cfg.parallel) {
      kernels::assemble_omp(in, ws);
    } else {
      kernels::assemble_serial(in, ws);
    }
    std::vector<double>& delta = ws.residual;
    for (double& d : delta) d = -d;
    kernels::thomas_solve(ws.jac, delta);

    double lambda = 1.0;
    for (int k = 0; k < 60; ++k) {
      bool positive = true;
      for (std::size_t i = 0; i < unknowns; ++i) {
        if (!(v[i] + lambda * delta[i] > 0.0)) {
          positive = false;
          break;
        }
      }
      if (positive) break;
      lambda *= 0.5;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < unknowns; ++i) {
      const double nv = v[i] + lambda * delta[i];
      if (!(nv > 0.0) || !std::isfinite(nv)) return false;
      change = std::max(change, std::abs(lambda * delta[i]) / nv);
      v[i] = nv;
    }
    if (lambda == 1.0 && change < cfg.newton_tol) return true;
  }
  return false;
}

}  // namespace

std::string to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::pin_singular:
      return "pin_singular";
    case BoundaryMode::pin_barrier_mid:
      return "pin_barrier_mid";
    case BoundaryMode::pin_initial:
      return "pin_initial";
    case BoundaryMode::neumann:
      return "neumann";
  }
  return "unknown";
}

BoundaryMode boundary_mode_from_string(const std::string& name) {
  for (auto mode : {BoundaryMode::pin_singular, BoundaryMode::pin_barrier_mid,
                    BoundaryMode::pin_initial, BoundaryMode::neumann}) {
    if (to_string(mode) == name) return mode;
  }
  throw DomainError("unknown boundary mode '" + name + "'");
}

void validate(const SolverConfig& cfg, const Grid& g) {
  if (!(cfg.dt_init > 0.0) || !(cfg.dt_max > 0.0) || !(cfg.t_end > 0.0) ||
      !(cfg.output_stride > 0.0) || cfg.newton_max_iter <= 0 || cfg.max_halvings < 0) {
    throw DomainError("solver config: time steps, t_end, stride and iteration caps must be positive");
  }
  if (!(cfg.newton_tol >= 1e-13)) throw DomainError("solver config: newton_tol must be >= 1e-13");
  for (double r : cfg.probes) {
    if (!(r > g.r[1] && r < g.r_max)) {
      throw DomainError("solver config: probe radius " + fmt(r) + " outside (r_1, r_max)");
    }
  }
}

InitialData make_initial_data(const ProblemParams& p, const TailSpec& tail) {
  const double c = 0.5 * (tail.c_lo + tail.c_hi);
  if (!(c > 0.0 && c < 1.0)) throw DomainError("initial data: tail coefficient must lie in (0,1)");
  if (!(tail.l > p.mu)) throw DomainError("initial data: tail exponent must exceed mu");
  const double mu = p.mu;
  const double l = tail.l;
  InitialData d;
  d.v0 = [c, mu, l](double r) {
    if (r <= 1.0) return 1.0 - c;
    return std::pow(r, -mu) - c * std::pow(r, -l);
  };
  double sup = 1.0 - c;
  const double r_star = std::pow(c * l / mu, 1.0 / (l - mu));
  if (r_star > 1.0) sup = std::max(sup, d.v0(r_star));
  d.info.inf_on_unit_ball = 1.0 - c;
  d.info.sup_global = sup;
  d.info.gap_inner = c;
  d.info.c_lo = tail.c_lo;
  d.info.c_hi = tail.c_hi;
  d.info.l = l;
  return d;
}

StepStats step(const ProblemParams& p, const Grid& g, const SolverConfig& cfg, SolverState& state,
               double dt, const BoundaryValue& bc) {
  if (state.v.size() != g.n_nodes()) throw DomainError("step: state does not match the grid");
  for (double x : state.v) {
    if (!(x > 0.0)) throw PositivityLoss("step: state is not strictly positive");
  }
  StepStats stats;
  std::vector<double> v;
  for (int h = 0; h <= cfg.max_halvings; ++h) {
    const double bc_value = dirichlet(cfg.boundary) ? bc(state.t + dt) : 0.0;
    int its = 0;
    if (newton(p, g, cfg, state.v, dt, bc_value, v, its)) {
      stats.newton_iterations += its;
      stats.dt_taken = dt;
      stats.halvings = h;
      state.v = std::move(v);
      state.t += dt;
      return stats;
    }
    stats.newton_iterations += its;
    dt *= 0.5;
  }
  throw NewtonDivergence("step: Newton failed after " + std::to_string(cfg.max_halvings) +
                         " halvings at t = " + fmt(state.t));
}

double gap_at(const ProblemParams& p, const std::vector<double>& r, const std::vector<double>& v,
              double x) {
  if (!(x > r[1] && x <= r.back())) throw DomainError("gap_at: radius outside (r_1, r_max]");
  // The relative gap 1 - r^mu v is smooth across the tail, so it interpolates
  // far better than r^{-mu} - v itself.
  const auto it = std::lower_bound(r.begin(), r.end(), x);
  const auto j = static_cast<std::size_t>(it - r.begin());
  const double g1 = 1.0 - std::pow(r[j], p.mu) * v[j];
  if (r[j] == x) return std::pow(x, -p.mu) * g1;
  const double g0 = 1.0 - std::pow(r[j - 1], p.mu) * v[j - 1];
  const double w = (x - r[j - 1]) / (r[j] - r[j - 1]);
  return std::pow(x, -p.mu) * ((1.0 - w) * g0 + w * g1);
}

RadialSolution solve(const ProblemParams& p, const Grid& g, const SolverConfig& cfg,
                     const RadialFunction& v0, const BoundaryValue& bc) {
  validate(cfg, g);
  if (dirichlet(cfg.boundary) && !bc) throw DomainError("solve: boundary value required");

  SolverState state;
  state.v.resize(g.n_nodes());
  for (std::size_t i = 0; i < g.n_nodes(); ++i) state.v[i] = v0(g.r[i]);
  if (dirichlet(cfg.boundary)) state.v.back() = bc(0.0);

  RadialSolution sol;
  sol.r = g.r;
  sol.probe_radii = cfg.probes;
  sol.probe_gap.resize(cfg.probes.size());
  sol.min_value = std::numeric_limits<double>::infinity();
  auto record = [&] {
    sol.times.push_back(state.t);
    sol.fields.push_back(state.v);
    sol.sup_norm.push_back(state.v.front());
    const double mx = *std::max_element(state.v.begin(), state.v.end());
    if (mx > state.v.front()) ++sol.sup_off_origin;
    sol.min_value = std::min(sol.min_value, *std::min_element(state.v.begin(), state.v.end()));
    for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
      sol.probe_gap[k].push_back(gap_at(p, g.r, state.v, cfg.probes[k]));
    }
  };
  record();

  const auto n_out = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.output_stride - 1e-9));
  double dt = std::min(cfg.dt_init, cfg.dt_max);
  for (std::size_t k = 1; k <= n_out; ++k) {
    const double target = std::min(cfg.t_end, static_cast<double>(k) * cfg.output_stride);
    while (state.t < target) {
      const double remaining = target - state.t;
      const bool clipped = dt >= remaining * (1.0 - 1e-9);
      const double h = clipped ? remaining : dt;
      const StepStats st = step(p, g, cfg, state, h, bc);
      ++sol.steps;
      sol.newton_iterations += static_cast<std::size_t>(st.newton_iterations);
      sol.halvings += static_cast<std::size_t>(st.halvings);
      if (st.halvings > 0) {
        dt = st.dt_taken;
      } else if (cfg.adaptive && st.newton_iterations <= 4 && !clipped) {
        dt = std::min(cfg.dt_max, dt * 1.25);
      }
      if (st.halvings == 0 && clipped) state.t = target;
    }
    record();
  }
  return sol;
}

BoundaryValue make_boundary(const ProblemParams& p, const Grid& g, BoundaryMode mode,
                            const RadialFunction& v0, const TailSpec& tail,
                            const BuildOptions& barrier_opts) {
  const double r_max = g.r_max;
  switch (mode) {
    case BoundaryMode::pin_singular: {
      const double value = std::pow(r_max, -p.mu);
      return [value](double) { return value; };
    }
    case BoundaryMode::pin_initial: {
      const double value = v0(r_max);
      return [value](double) { return value; };
    }
    case BoundaryMode::pin_barrier_mid: {
      const InitialData d = make_initial_data(p, tail);
      const auto sub = build_subsolution(p, tail, d.info, barrier_opts).barrier;
      const auto super = build_supersolution(p, tail, d.info, barrier_opts).barrier;
      return [sub, super, r_max](double t) {
        return 0.5 * (lift(sub, r_max, t) + lift(super, r_max, t));
      };
    }
    case BoundaryMode::neumann:
      return {};
  }
  return {};
}

RadialSolution solve(const ProblemParams& p, const TailSpec& tail, const Grid& g,
                     const SolverConfig& cfg, const BuildOptions& barrier_opts) {
  const InitialData d = make_initial_data(p, tail);
  return solve(p, g, cfg, d.v0, make_boundary(p, g, cfg.boundary, d.v0, tail, barrier_opts));
}

ComparisonReport discrete_comparison(const ProblemParams& p, const Grid& g,
                                     const SolverConfig& cfg, const RadialFunction& v0_a,
                                     const RadialFunction& v0_b, const BoundaryValue& bc) {
  for (double r : g.r) {
    if (v0_a(r) > v0_b(r)) {
      throw DomainError("discrete_comparison: v0_a exceeds v0_b at r = " + fmt(r));
    }
  }
  const RadialSolution a = solve(p, g, cfg, v0_a, bc);
  const RadialSolution b = solve(p, g, cfg, v0_b, bc);
  ComparisonReport rep;
  rep.identical = a.fields == b.fields;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  const double tol = 10.0 * cfg.newton_tol;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
      const double viol = (a.fields[k][i] - b.fields[k][i]) / b.fields[k][i];
      rep.max_violation = std::max(rep.max_violation, viol);
      if (viol > tol) {
        throw OrderingError("discrete comparison violated at t = " + fmt(a.times[k]) +
                            ", r = " + fmt(g.r[i]));
      }
    }
  }
  rep.records = a.times.size();
  return rep;
}

SandwichReport sandwich_check(const RadialSolution& sol, const PiecewiseBarrier& sub,
                              const PiecewiseBarrier& super, const ErrorField* allowance) {
  SandwichReport rep;
  rep.max_sub_violation = -std::numeric_limits<double>::infinity();
  rep.max_super_violation = -std::numeric_limits<double>::infinity();
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times[k];
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      const double v = sol.fields[k][i];
      const double r = sol.r[i];
      const double below = (lift(sub, r, t) - v) / v;
      const double above = (v - lift(super, r, t)) / v;
      rep.max_sub_violation = std::max(rep.max_sub_violation, below);
      rep.max_super_violation = std::max(rep.max_super_violation, above);
      const double allow = allowance ? (*allowance)[k][i] : 0.0;
      rep.max_excess = std::max(rep.max_excess, std::max(below, above) - allow);
      ++rep.checked;
    }
  }
  return rep;
}

ErrorField scheme_error_estimate(const ProblemParams& p, const TailSpec& tail,
                                 const RadialSolution& coarse, const RadialSolution& fine) {
  const std::size_t nr = coarse.r.size();
  if (fine.r.size() != 2 * nr - 1 || fine.times.size() != coarse.times.size()) {
    throw DomainError("scheme_error_estimate: fine run does not nest the coarse run");
  }
  for (std::size_t i = 0; i < nr; ++i) {
    if (std::abs(fine.r[2 * i] - coarse.r[i]) > 1e-9 * (1.0 + coarse.r[i])) {
      throw DomainError("scheme_error_estimate: node " + std::to_string(i) + " not shared");
    }
  }
  for (std::size_t k = 0; k < coarse.times.size(); ++k) {
    if (std::abs(fine.times[k] - coarse.times[k]) > 1e-12) {
      throw DomainError("scheme_error_estimate: record times differ");
    }
  }
  const double c = make_initial_data(p, tail).info.gap_inner;
  const double kappa = kappa_of(p, tail.l);
  const double lambda = (tail.l - p.mu) * kappa;
  const double bdry = c * std::pow(coarse.r.back(), -(tail.l - p.mu));
  ErrorField err(coarse.times.size(), std::vector<double>(nr));
  for (std::size_t k = 0; k < coarse.times.size(); ++k) {
    const double b = bdry * std::exp(-lambda * coarse.times[k]);
    for (std::size_t i = 0; i < nr; ++i) {
      const double vf = fine.fields[k][2 * i];
      err[k][i] = std::abs(coarse.fields[k][i] - vf) / vf + b;
    }
  }
  return err;
}

}  // namespace fde
