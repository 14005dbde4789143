#include "fde/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "fde/barriers.hpp"
#include "fde/errors.hpp"
#include "fde/grid.hpp"
#include "fde/io.hpp"
#include "fde/operators.hpp"
#include "fde/profiles.hpp"
#include "fde/rates.hpp"
#include "fde/rescale.hpp"
#include "fde/solver.hpp"

namespace fde {

namespace fs = std::filesystem;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ProblemParams params_of(const RunConfig& cfg) { return make_params(cfg.n, cfg.m, cfg.dimension); }

BuildOptions build_options(const RunConfig& cfg) {
  BuildOptions bo = cfg.barriers;
  bo.range = cfg.range;
  return bo;
}

PropertyResult below(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

std::map<std::string, std::string> base_metadata(const RunConfig& cfg, const std::string& cmd) {
  std::map<std::string, std::string> meta;
  meta["run.command"] = cmd;
  std::istringstream in(serialize(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    meta["config." + line.substr(0, eq)] = line.substr(eq + 3);
  }
  meta["initial_data.core"] = "plateau 1-c on [0,1], c = (c_lo+c_hi)/2";
  return meta;
}

void add_report(std::map<std::string, std::string>& meta, const SelectionReport& rep,
                const std::string& prefix = "selection.") {
  for (const auto& e : rep.inputs) meta[prefix + e.name] = fmt17(e.value);
  for (const auto& e : rep.entries) {
    meta[prefix + e.name] = fmt17(e.value) + " ; " + e.inequality + " ; slack " +
                                  fmt17(e.slack);
  }
}

std::string tag_of(double l) {
  std::ostringstream os;
  os << "l" << l;
  return os.str();
}

}  // namespace

std::vector<PropertyResult> run_verify_suite(const RunConfig& cfg) {
  const ProblemParams p = params_of(cfg);
  std::vector<PropertyResult> out;

  const double mu_t = p.mu + cfg.verify.mu_perturbation;
  out.push_back(below("params.mu_identity", std::abs(mu_t * (1.0 - p.m) - 2.0) / 2.0, 1e-12));
  out.push_back(below("params.beta_ss_forms", rel(p.beta_ss, p.mu / (2.0 * (p.n - p.mu))), 1e-12));

  {
    double vieta = 0.0;
    double roots = 0.0;
    double book = 0.0;
    const double lo = p.mu + 2.0;
    for (int i = 1; i <= 1000; ++i) {
      const double l = lo + (p.n - lo) * i / 1001.0;
      const RateSet rs = derive_rates(p, l);
      const double s = p.n - 2.0 - p.mu - rs.kappa;
      vieta = std::max(vieta, std::abs(rs.alpha_minus + rs.alpha_plus - s) / std::max(1.0, s));
      vieta = std::max(vieta, std::abs(rs.alpha_minus * rs.alpha_plus - 2.0 * rs.kappa) /
                                  std::max(1.0, 2.0 * rs.kappa));
      const double sc = std::max(1.0, std::abs(2.0 * rs.kappa));
      roots = std::max({roots, std::abs(alpha_quadratic(p, rs.kappa, rs.alpha_minus)) / sc,
                        std::abs(alpha_quadratic(p, rs.kappa, rs.alpha_plus)) / sc});
      book = std::max(book,
                      std::abs(p.n * p.beta_ss - rs.theta - rs.gamma / (2.0 * (p.n - p.mu))));
    }
    out.push_back(below("params.vieta", vieta, 1e-12));
    out.push_back(below("params.root_residual", roots, 1e-12));
    out.push_back(below("rates.exponent_bookkeeping", book, 1e-12));
  }
  out.push_back(below("params.gamma_max", rel(derive_rates(p, p.L).gamma, gamma_max(p)), 1e-12));

  {
    double worst = 0.0;
    for (double D : {0.1, 1.0, 10.0}) {
      for (double r : log_grid(1e-3, 1e3, 200)) {
        const Jet j = jet_rescaled_profile(p, D, r);
        worst = std::max(worst,
                         std::abs(residual_P(p, j, r)) / std::max(1.0, residual_P_scale(p, j, r)));
      }
    }
    out.push_back(below("profiles.stationarity", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (double amp : {0.5, 1.0, 2.0}) {
      const double t_stop = std::min(2.0, 0.9 * mu_tail_vanishing_time(p, amp));
      for (int it = 0; it <= 20; ++it) {
        const double t = t_stop * it / 20.0;
        for (int ir = 0; ir <= 20; ++ir) {
          const double r = 0.5 + 4.5 * ir / 20.0;
          const Jet j = jet_mu_tail_family(p, amp, r, t);
          worst = std::max(worst, std::abs(residual_P(p, j, r)) /
                                      std::max(1.0, residual_P_scale(p, j, r)));
        }
      }
    }
    out.push_back(below("profiles.mu_tail_residual", worst, 1e-8));
  }
  {
    const ScalarField v1 = [&](double r, double) { return eval_rescaled_profile(p, 1.0, r); };
    const double h = cfg.verify.fd_step;
    double e1 = 0.0;
    double e2 = 0.0;
    for (double r : {0.5, 1.0, 2.0, 4.0}) {
      e1 = std::max(e1, std::abs(residual_P_fd(p, v1, r, 1.0, h)));
      e2 = std::max(e2, std::abs(residual_P_fd(p, v1, r, 1.0, h / 2.0)));
    }
    out.push_back(below("operators.fd_residual", e1, 1e3 * h * h));
    const double ratio = e1 / e2;
    out.push_back({"operators.fd_order_ratio", ratio, 4.0, ratio > 3.5 && ratio < 4.5});
  }

  const RateSet rs = derive_rates(p, cfg.tail.l);
  {
    double worst = 0.0;
    const auto check = [&](const PsiPiece& piece, double xi) {
      double scale = 0.0;
      const double closed = eval_A_closed_form(p, rs.kappa, piece, xi, &scale);
      const double generic = eval_A(p, rs.kappa, piece, xi);
      scale = std::max(scale, eval_A_scale(p, rs.kappa, eval_piece(piece, xi), xi));
      worst = std::max(worst, std::abs(closed - generic) / std::max(scale, 1e-300));
    };
    const InitialData d = make_initial_data(p, cfg.tail);
    const BarrierBuild sup = build_supersolution(p, cfg.tail, d.info, build_options(cfg));
    for (double xi : log_grid(1e-3, 1e3, 1000)) {
      check(QuadraticPiece{rs.kappa / p.n}, xi);
      check(PowerPiece{0.1, rs.alpha_minus}, xi);
      check(sup.barrier.outer(), xi);
    }
    out.push_back(below("operators.closed_form_agreement", worst, 1e-12));

    const BarrierBuild sub = build_subsolution(p, cfg.tail, d.info, build_options(cfg));
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const BarrierBuild* b : {&sub, &sup}) {
      double id = 0.0;
      std::size_t done = 0;
      while (done < cfg.verify.random_points) {
        const double t = 2.0 * u01(rng);
        const double xi = std::pow(10.0, -3.0 + 6.0 * u01(rng)) * std::max(1.0, b->barrier.corner());
        if (b->barrier.near_corner(xi, 1e-6)) continue;
        const double r = xi / std::pow(b->barrier.sigma(t), 1.0 / p.mu);
        const Jet j = lift_jet(b->barrier, r, t);
        const double lhs = residual_P(p, j, r);
        const double rhs = lift_identity_rhs(b->barrier, r, t);
        id = std::max(id, std::abs(lhs - rhs) / std::max(residual_P_scale(p, j, r), 1e-300));
        ++done;
      }
      out.push_back(below("barriers.lift_identity_" + to_string(b->barrier.side()), id, 1e-8));
    }
  }

  {
    const PhysicalFrame frame = make_frame(cfg.transform.T);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double trip = 0.0;
    double time_id = 0.0;
    double fujita = 0.0;
    double baren = 0.0;
    for (std::size_t i = 0; i < cfg.verify.random_points; ++i) {
      const PhysicalPoint pt{std::pow(10.0, -2.0 + 4.0 * u01(rng)), 0.999 * frame.T * u01(rng),
                             std::pow(10.0, -3.0 + 6.0 * u01(rng))};
      const RescaledPoint q = to_rescaled(p, frame, pt);
      const PhysicalPoint back = from_rescaled(p, frame, q);
      trip = std::max({trip, rel(back.y_radius, pt.y_radius),
                       std::abs(back.tau - pt.tau) / frame.T, rel(back.u_value, pt.u_value)});
      time_id = std::max(time_id, rel(time_to_extinction(p, frame, q.t), frame.T - pt.tau));
      const FujitaPoint f = to_fujita_frame(p, frame, pt);
      fujita = std::max(fujita, std::abs(f.s - 2.0 * q.t / p.beta_ss) / std::max(1.0, f.s));
      const double D = 0.5 + u01(rng);
      const double u = eval_barenblatt_physical(p, BarenblattProfile{D, frame.T}, pt.y_radius,
                                                pt.tau);
      const RescaledPoint qv = to_rescaled(p, frame, PhysicalPoint{pt.y_radius, pt.tau, u});
      baren = std::max(baren, rel(qv.v_value, eval_rescaled_profile(p, D, qv.x_radius)));
    }
    out.push_back(below("rescale.round_trip", trip, 1e-12));
    out.push_back(below("rescale.time_identity", time_id, 1e-12));
    out.push_back(below("rescale.fujita_time", fujita, 1e-12));
    out.push_back(below("rescale.barenblatt_stationary", baren, 1e-10));
  }
  return out;
}

std::string verify_csv(const std::vector<PropertyResult>& results) {
  std::string s = "property,value,tolerance,passed\n";
  for (const auto& r : results) {
    s += r.name + ',' + fmt17(r.value) + ',' + fmt17(r.tolerance) + ',' + (r.passed ? "1" : "0") +
         '\n';
  }
  return s;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const auto results = run_verify_suite(cfg);
  write_text(fs::path(cfg.out_dir) / "verify.csv", verify_csv(results));
  bool ok = true;
  for (const auto& r : results) {
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << fmt17(r.value)
        << " tol=" << fmt17(r.tolerance) << '\n';
    ok = ok && r.passed;
  }
  write_text(fs::path(cfg.out_dir) / "metadata.txt",
             metadata_sidecar(base_metadata(cfg, "verify")));
  return ok ? exit_ok : exit_failure;
}

int cmd_barriers(const RunConfig& cfg, std::ostream& log) {
  const ProblemParams p = params_of(cfg);
  const InitialData d = make_initial_data(p, cfg.tail);
  const fs::path dir(cfg.out_dir);
  auto meta = base_metadata(cfg, "barriers");
  bool ok = true;
  const auto radii = ordering_radii();
  for (Side side : {Side::sub, Side::super}) {
    const BarrierBuild b = side == Side::sub
                               ? build_subsolution(p, cfg.tail, d.info, build_options(cfg))
                               : build_supersolution(p, cfg.tail, d.info, build_options(cfg));
    const PiecewiseBarrier barrier = b.barrier.with_sigma0(b.barrier.sigma0() * cfg.sigma0_scale);
    const CertificateReport cert = certify(barrier, b.report);
    const OrderingReport ord = initial_ordering_check(barrier, d.v0, radii);
    const std::string name = to_string(side);
    write_text(dir / (name + "_report.txt"), b.report.serialize());
    write_text(dir / (name + "_certificate.csv"), certificate_csv(cert));
    add_report(meta, b.report);
    meta[name + ".certificate_passed"] = cert.passed() ? "1" : "0";
    meta[name + ".ordering_max_violation"] = fmt17(ord.max_violation);
    meta[name + ".sigma0_used"] = fmt17(barrier.sigma0());
    log << name << ": certificate " << (cert.passed() ? "pass" : "FAIL")
        << " (violations " << cert.sign_violations << ", worst " << fmt17(cert.worst_value)
        << ", jump " << (cert.jump_ok ? "ok" : "wrong") << "), ordering "
        << (ord.ok() ? "pass" : "FAIL") << " (max " << fmt17(ord.max_violation) << ")\n";
    ok = ok && cert.passed() && ord.ok();
  }
  write_text(dir / "metadata.txt", metadata_sidecar(meta));
  return ok ? exit_ok : exit_failure;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const ProblemParams p = params_of(cfg);
  const Grid g = make_grid(p, cfg.r_max, cfg.n_cells, cfg.ratio);
  SolverConfig sc = cfg.solver;
  sc.probes = {cfg.r_probe};
  const RadialSolution sol = solve(p, cfg.tail, g, sc, build_options(cfg));

  const InitialData d = make_initial_data(p, cfg.tail);
  const BarrierBuild sub = build_subsolution(p, cfg.tail, d.info, build_options(cfg));
  const BarrierBuild sup = build_supersolution(p, cfg.tail, d.info, build_options(cfg));
  const Grid fine_grid = make_grid(p, cfg.r_max, 2 * cfg.n_cells, std::sqrt(cfg.ratio));
  const RadialSolution fine = solve(p, cfg.tail, fine_grid, sc, build_options(cfg));
  ErrorField allowance = scheme_error_estimate(p, cfg.tail, sol, fine);
  double est_max = 0.0;
  for (auto& row : allowance) {
    for (double& e : row) {
      est_max = std::max(est_max, e);
      e *= 10.0;
    }
  }
  const SandwichReport sw = sandwich_check(sol, sub.barrier, sup.barrier, &allowance);

  const fs::path dir(cfg.out_dir);
  write_text(dir / "solution.csv", solution_csv(sol));
  write_text(dir / "sup_norm.csv", sup_norm_csv(sol));
  write_text(dir / "probe_0.csv", probe_csv(sol, 0));
  std::vector<double> log_sup(sol.sup_norm.size());
  std::transform(sol.sup_norm.begin(), sol.sup_norm.end(), log_sup.begin(),
                 [](double x) { return std::log(x); });
  write_text(dir / "log_sup_norm.dat", two_column("t log(sup v)", sol.times, log_sup));

  auto meta = base_metadata(cfg, "solve");
  add_report(meta, sub.report);
  add_report(meta, sup.report);
  meta["solve.steps"] = std::to_string(sol.steps);
  meta["solve.newton_iterations"] = std::to_string(sol.newton_iterations);
  meta["solve.halvings"] = std::to_string(sol.halvings);
  meta["solve.min_value"] = fmt17(sol.min_value);
  meta["solve.sup_off_origin"] = std::to_string(sol.sup_off_origin);
  meta["sandwich.max_sub_violation"] = fmt17(sw.max_sub_violation);
  meta["sandwich.max_super_violation"] = fmt17(sw.max_super_violation);
  meta["sandwich.max_excess_over_10x_error"] = fmt17(sw.max_excess);
  meta["sandwich.max_error_estimate"] = fmt17(est_max);
  write_text(dir / "metadata.txt", metadata_sidecar(meta));

  log << "solve: " << sol.times.size() << " records, " << sol.steps << " steps, sup(t_end) "
      << fmt17(sol.sup_norm.back()) << ", sandwich " << (sw.ok() ? "pass" : "FAIL")
      << '\n';
  return sw.ok() && sol.sup_off_origin == 0 ? exit_ok : exit_failure;
}

int cmd_rates(const RunConfig& cfg, std::ostream& log) {
  const ProblemParams p = params_of(cfg);
  const RateTableConfig rc = rate_table_config(cfg);
  std::vector<RadialSolution> runs;
  const auto rows = rate_table(p, cfg.l_list, rc, &runs);
  const Tolerances tol;

  const fs::path dir(cfg.out_dir);
  write_text(dir / "rates.csv", rates_csv(rows));
  auto meta = base_metadata(cfg, "rates");
  meta["tolerance.gamma"] = fmt17(tol.gamma);
  meta["tolerance.lambda"] = fmt17(tol.lambda);
  meta["tolerance.theta"] = fmt17(tol.theta);
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RateRow& r = rows[i];
    const std::string tag = tag_of(r.l);
    if (!runs[i].times.empty()) {
      write_text(dir / ("sup_norm_" + tag + ".csv"), sup_norm_csv(runs[i]));
      write_text(dir / ("probe_" + tag + ".csv"), probe_csv(runs[i], 0));
    }
    meta["row." + tag + ".error"] = r.error;
    meta["row." + tag + ".boundary_shift"] = fmt17(r.boundary_shift);
    meta["row." + tag + ".boundary_tol"] = fmt17(r.boundary_tol);
    meta["row." + tag + ".gamma_rms"] = fmt17(r.growup.rms_residual);
    meta["row." + tag + ".lambda_rms"] = fmt17(r.decay.rms_residual);
    meta["row." + tag + ".within_tolerance"] = r.within(tol) ? "1" : "0";
    try {
      TailSpec t = cfg.tail;
      t.l = r.l;
      const InitialData d = make_initial_data(p, t);
      const std::string prefix = "row." + tag + ".selection.";
      add_report(meta, build_subsolution(p, t, d.info, build_options(cfg)).report, prefix);
      add_report(meta, build_supersolution(p, t, d.info, build_options(cfg)).report, prefix);
    } catch (const Error& e) {
      meta["row." + tag + ".selection_error"] = e.what();
    }
    const bool row_ok = r.within(tol) && (!cfg.boundary_gate || r.boundary_ok);
    ok = ok && row_ok;
    log << "l=" << r.l << " gamma " << fmt17(r.gamma_fit) << " (pred " << r.gamma_pred
        << ") lambda " << fmt17(r.lambda_fit) << " (pred " << r.lambda_pred << ") theta "
        << fmt17(r.theta_fit) << " (pred " << r.theta_pred << ") gate "
        << (r.boundary_ok ? "ok" : "FAIL") << (r.error.empty() ? "" : " error: " + r.error)
        << (row_ok ? "" : "  [out of tolerance]") << '\n';
  }
  write_text(dir / "metadata.txt", metadata_sidecar(meta));
  return ok ? exit_ok : exit_failure;
}

int cmd_transform(const RunConfig& cfg, std::ostream& log) {
  const ProblemParams p = params_of(cfg);
  const PhysicalFrame frame = make_frame(cfg.transform.T);
  const auto& in = cfg.transform;
  std::string csv;
  switch (in.direction) {
    case TransformDirection::to_rescaled: {
      const RescaledPoint q = to_rescaled(p, frame, {in.radius, in.time, in.value});
      csv = "x,t,v\n" + fmt17(q.x_radius) + ',' + fmt17(q.t) + ',' + fmt17(q.v_value) + '\n';
      break;
    }
    case TransformDirection::from_rescaled: {
      const PhysicalPoint q = from_rescaled(p, frame, {in.radius, in.time, in.value});
      csv = "y,tau,u\n" + fmt17(q.y_radius) + ',' + fmt17(q.tau) + ',' + fmt17(q.u_value) + '\n';
      break;
    }
    case TransformDirection::to_fujita: {
      const FujitaPoint q = to_fujita_frame(p, frame, {in.radius, in.time, in.value});
      csv = "y,s,w\n" + fmt17(q.y_radius) + ',' + fmt17(q.s) + ',' + fmt17(q.w_value) + '\n';
      break;
    }
  }
  write_text(fs::path(cfg.out_dir) / "transform.csv", csv);
  log << csv;
  return exit_ok;
}

int cmd_table(const RunConfig& cfg, std::ostream& log) {
  const ProblemParams p = params_of(cfg);
  std::string csv = "l,kappa,alpha_minus,alpha_plus,gamma,lambda,theta\n";
  for (double l : cfg.l_list) {
    const RateSet rs = derive_rates(p, l);
    csv += fmt17(l) + ',' + fmt17(rs.kappa) + ',' + fmt17(rs.alpha_minus) + ',' +
           fmt17(rs.alpha_plus) + ',' + fmt17(rs.gamma) + ',' + fmt17(rs.lambda) + ',' +
           fmt17(rs.theta) + '\n';
  }
  write_text(fs::path(cfg.out_dir) / "exponents.csv", csv);
  log << "mu=" << fmt17(p.mu) << " L=" << fmt17(p.L) << " gamma_max=" << fmt17(gamma_max(p))
      << '\n'
      << csv;
  return exit_ok;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"rates",  "barriers",  "solve",
                                                 "verify", "transform", "table"};
  return names;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& log) {
  try {
    validate(cfg);
    if (name == "rates") return cmd_rates(cfg, log);
    if (name == "barriers") return cmd_barriers(cfg, log);
    if (name == "solve") return cmd_solve(cfg, log);
    if (name == "verify") return cmd_verify(cfg, log);
    if (name == "transform") return cmd_transform(cfg, log);
    if (name == "table") return cmd_table(cfg, log);
    log << "error: unknown command '" << name << "'\n";
    return exit_invalid;
  } catch (const DomainError& e) {
    log << "validation error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

}  // namespace fde
