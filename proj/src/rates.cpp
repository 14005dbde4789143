#include "fde/rates.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fde/errors.hpp"
#include "fde/grid.hpp"

namespace fde {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool in_window(double t, const FitWindow& w) {
  const double pad = 1e-9 * std::max(1.0, std::abs(w.t_hi));
  return t >= w.t_lo - pad && t <= w.t_hi + pad;
}

void check_window(const FitWindow& w) {
  if (!(w.t_hi > w.t_lo)) throw FitError("fit window is empty");
}

}  // namespace

RateFit fit_line(std::span<const double> x, std::span<const double> y, std::size_t min_samples) {
  if (x.size() != y.size()) throw FitError("fit: abscissa and ordinate differ in length");
  const std::size_t n = x.size();
  if (n < min_samples || n < 2) {
    throw FitError("fit: " + std::to_string(n) + " samples, need at least " +
                   std::to_string(std::max<std::size_t>(min_samples, 2)));
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit: abscissa has no spread");
  RateFit f;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.exponent * x[i]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / static_cast<double>(n));
  f.samples = n;
  return f;
}

RateFit fit_log_linear(std::span<const double> times, std::span<const double> values,
                       const FitWindow& w) {
  check_window(w);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!in_window(times[k], w)) continue;
    if (!(values[k] > 0.0)) throw FitError("fit: non-positive value at t = " + fmt(times[k]));
    x.push_back(times[k]);
    y.push_back(std::log(values[k]));
  }
  RateFit f = fit_line(x, y);
  f.t_lo = w.t_lo;
  f.t_hi = w.t_hi;
  return f;
}

RateFit fit_growup(const RadialSolution& sol, const FitWindow& w) {
  return fit_log_linear(sol.times, sol.sup_norm, w);
}

RateFit fit_outer_decay(const ProblemParams& p, const RadialSolution& sol, double r_probe,
                        const FitWindow& w) {
  check_window(w);
  std::vector<double> times;
  std::vector<double> gaps;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    if (!in_window(sol.times[k], w)) continue;
    const double g = gap_at(p, sol.r, sol.fields[k], r_probe);
    if (!(g > 0.0)) {
      throw GapSignError("gap at r = " + fmt(r_probe) + " is not positive at t = " +
                         fmt(sol.times[k]));
    }
    times.push_back(sol.times[k]);
    gaps.push_back(g);
  }
  return fit_log_linear(times, gaps, w);
}

RateFit fit_extinction(const ProblemParams& p, const RadialSolution& sol,
                       const PhysicalFrame& frame, const FitWindow& w) {
  check_window(w);
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    const double t = sol.times[k];
    if (!in_window(t, w)) continue;
    if (!(sol.sup_norm[k] > 0.0)) throw FitError("fit: non-positive sup norm at t = " + fmt(t));
    x.push_back(std::log(time_to_extinction(p, frame, t)));
    y.push_back(std::log(physical_sup_norm(p, frame, t, sol.sup_norm[k])));
  }
  RateFit f = fit_line(x, y);
  f.t_lo = w.t_lo;
  f.t_hi = w.t_hi;
  return f;
}

bool RateRow::within(const Tolerances& tol) const {
  if (!error.empty()) return false;
  return std::abs(gamma_fit - gamma_pred) <= tol.gamma * std::abs(gamma_pred) &&
         std::abs(lambda_fit - lambda_pred) <= tol.lambda * std::abs(lambda_pred) &&
         std::abs(theta_fit - theta_pred) <= tol.theta * std::abs(theta_pred);
}

RateRow rate_row(const ProblemParams& p, double l, const RateTableConfig& cfg,
                 RadialSolution* main_run, RadialSolution* gate_run) {
  RateRow row;
  row.l = l;
  const double nan = std::nan("");
  row.gamma_fit = row.lambda_fit = row.theta_fit = nan;
  row.boundary_shift = row.boundary_tol = nan;
  try {
    const RateSet rs = derive_rates(p, l);
    row.kappa = rs.kappa;
    row.gamma_pred = rs.gamma;
    row.lambda_pred = rs.lambda;
    row.theta_pred = rs.theta;

    TailSpec tail = cfg.tail;
    tail.l = l;
    validate_tail(p, tail, cfg.barriers.range);
    if (!(cfg.r_probe <= cfg.r_max / 4.0)) {
      throw DomainError("probe radius must not exceed r_max/4");
    }
    SolverConfig sc = cfg.solver;
    sc.probes = {cfg.r_probe};

    const Grid g = make_grid(p, cfg.r_max, cfg.n_cells, cfg.ratio);
    RadialSolution sol = solve(p, tail, g, sc, cfg.barriers);
    row.growup = fit_growup(sol, cfg.window);
    row.decay = fit_outer_decay(p, sol, cfg.r_probe, cfg.window);
    const PhysicalFrame frame = make_frame(extinction_time(p, tail.amp));
    row.extinction = fit_extinction(p, sol, frame, cfg.window);
    row.gamma_fit = row.growup.exponent;
    row.lambda_fit = -row.decay.exponent;
    row.theta_fit = row.extinction.exponent;

    if (cfg.boundary_gate) {
      const Grid g2 = make_grid(p, 2.0 * cfg.r_max, cfg.n_cells, cfg.ratio);
      RadialSolution sol2 = solve(p, tail, g2, sc, cfg.barriers);
      const RateFit f2 = fit_growup(sol2, cfg.window);
      row.boundary_shift = std::abs(f2.exponent - row.gamma_fit);
      row.boundary_tol =
          std::max(row.growup.rms_residual, f2.rms_residual) / (cfg.window.t_hi - cfg.window.t_lo);
      row.boundary_ok = row.boundary_shift < row.boundary_tol;
      if (gate_run) *gate_run = std::move(sol2);
    }
    if (main_run) *main_run = std::move(sol);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<RateRow> rate_table(const ProblemParams& p, std::span<const double> l_list,
                                const RateTableConfig& cfg, std::vector<RadialSolution>* runs) {
  const auto n = static_cast<std::ptrdiff_t>(l_list.size());
  std::vector<RateRow> rows(l_list.size());
  if (runs) runs->assign(l_list.size(), RadialSolution{});
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rows[i] = rate_row(p, l_list[i], cfg, runs ? &(*runs)[i] : nullptr);
  }
  return rows;
}

std::string rates_csv(std::span<const RateRow> rows) {
  std::ostringstream os;
  os << "l,kappa,gamma_pred,gamma_fit,lambda_pred,lambda_fit,theta_pred,theta_fit,boundary_ok\n";
  for (const auto& r : rows) {
    os << fmt(r.l) << ',' << fmt(r.kappa) << ',' << fmt(r.gamma_pred) << ',' << fmt(r.gamma_fit)
       << ',' << fmt(r.lambda_pred) << ',' << fmt(r.lambda_fit) << ',' << fmt(r.theta_pred) << ','
       << fmt(r.theta_fit) << ',' << (r.boundary_ok ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace fde
