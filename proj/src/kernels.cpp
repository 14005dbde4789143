#include "fde/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fde/barriers.hpp"
#include "fde/errors.hpp"

namespace fde::kernels {

namespace {

constexpr double kFloor = 1e-300;

double sweep_point(const PiecewiseBarrier& b, double xi, double exclusion) {
  if (b.near_corner(xi, exclusion)) return std::numeric_limits<double>::quiet_NaN();
  return eval_A(b, xi);
}

void face_pass(const Assembly& in, std::vector<FaceFlux>& faces, std::size_t i) {
  const auto& g = *in.grid;
  faces[i] = face_flux(in.p->m, in.p->mu, in.v[i], in.v[i + 1], g.inv_dr[i], g.face[i]);
}

void row_pass(const Assembly& in, Workspace& ws, std::size_t i) {
  const auto& g = *in.grid;
  const double mu = in.p->mu;
  const std::size_t N = g.n_cells();
  const double w = in.dt / g.volume[i];

  double out_flux = 0.0;
  double d_self = 0.0;
  double d_up = 0.0;
  if (i < N) {
    const auto& f = ws.faces[i];
    out_flux = g.face_area[i] * f.F;
    d_self = g.face_area[i] * f.dF_da;
    d_up = g.face_area[i] * f.dF_db;
  } else if (in.outflow) {
    out_flux = g.outer_area * mu * g.r_max * in.v[i];
    d_self = g.outer_area * mu * g.r_max;
  }
  double in_flux = 0.0;
  double d_down = 0.0;
  if (i > 0) {
    const auto& f = ws.faces[i - 1];
    in_flux = g.face_area[i - 1] * f.F;
    d_self -= g.face_area[i - 1] * f.dF_db;
    d_down = -g.face_area[i - 1] * f.dF_da;
  }
  ws.residual[i] = in.v[i] - in.v_old[i] - w * (out_flux - in_flux);
  ws.jac.diag[i] = 1.0 - w * d_self;
  ws.jac.upper[i] = i + 1 < in.unknowns ? -w * d_up : 0.0;
  ws.jac.lower[i] = i > 0 ? -w * d_down : 0.0;
}

void prepare(const Assembly& in, Workspace& ws) {
  const auto& g = *in.grid;
  if (in.v.size() != g.n_nodes() || in.v_old.size() != g.n_nodes()) {
    throw DomainError("assemble: field size does not match the grid");
  }
  ws.faces.resize(g.n_cells());
  ws.residual.resize(in.unknowns);
  ws.jac.resize(in.unknowns);
}

}  // namespace

void sweep_A_serial(const PiecewiseBarrier& b, std::span<const double> xi, std::span<double> out,
                    double corner_exclusion) {
  const auto n = static_cast<std::ptrdiff_t>(xi.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sweep_point(b, xi[i], corner_exclusion);
}

void sweep_A_omp(const PiecewiseBarrier& b, std::span<const double> xi, std::span<double> out,
                 double corner_exclusion) {
  const auto n = static_cast<std::ptrdiff_t>(xi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = sweep_point(b, xi[i], corner_exclusion);
}

FaceFlux face_flux(double m, double mu, double a, double b, double inv_h, double rbar) {
  a = std::max(a, kFloor);
  b = std::max(b, kFloor);
  const double s = std::log1p((b - a) / a);
  const double am = std::pow(a, m);
  const double e1 = std::expm1(m * s);
  const double d_phi = am * e1 / m;

  double g = 1.0;
  double dg = 0.5;
  if (s != 0.0) {
    const double c = (m - 1.0) / m;
    const double e2 = std::expm1((m - 1.0) * s);
    g = c * e1 / e2;
    if (std::abs(s) < 1e-4) {
      dg = 0.5 + (m + 1.0) * s / 6.0;
    } else {
      dg = c * (m * (e1 + 1.0) * e2 - e1 * (m - 1.0) * (e2 + 1.0)) / (e2 * e2);
    }
  }
  FaceFlux f;
  f.F = d_phi * inv_h + mu * rbar * a * g;
  f.dF_da = -am / a * inv_h + mu * rbar * (g - dg);
  f.dF_db = std::pow(b, m - 1.0) * inv_h + mu * rbar * (a / b) * dg;
  return f;
}

void Tridiag::resize(std::size_t n) {
  lower.assign(n, 0.0);
  diag.assign(n, 0.0);
  upper.assign(n, 0.0);
}

void thomas_solve(Tridiag& a, std::span<double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw DomainError("thomas_solve: size mismatch");
  for (std::size_t i = 1; i < n; ++i) {
    if (a.diag[i - 1] == 0.0 || !std::isfinite(a.diag[i - 1])) {
      throw NewtonDivergence("tridiagonal solve hit a zero pivot");
    }
    const double f = a.lower[i] / a.diag[i - 1];
    a.diag[i] -= f * a.upper[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  if (a.diag[n - 1] == 0.0 || !std::isfinite(a.diag[n - 1])) {
    throw NewtonDivergence("tridiagonal solve hit a zero pivot");
  }
  rhs[n - 1] /= a.diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - a.upper[i] * rhs[i + 1]) / a.diag[i];
  }
}

void assemble_serial(const Assembly& in, Workspace& ws) {
  prepare(in, ws);
  const auto nf = static_cast<std::ptrdiff_t>(ws.faces.size());
  for (std::ptrdiff_t i = 0; i < nf; ++i) face_pass(in, ws.faces, static_cast<std::size_t>(i));
  const auto nu = static_cast<std::ptrdiff_t>(in.unknowns);
  for (std::ptrdiff_t i = 0; i < nu; ++i) row_pass(in, ws, static_cast<std::size_t>(i));
}

void assemble_omp(const Assembly& in, Workspace& ws) {
  prepare(in, ws);
  const auto nf = static_cast<std::ptrdiff_t>(ws.faces.size());
  const auto nu = static_cast<std::ptrdiff_t>(in.unknowns);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < nf; ++i) face_pass(in, ws.faces, static_cast<std::size_t>(i));
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < nu; ++i) row_pass(in, ws, static_cast<std::size_t>(i));
  }
}

}  // namespace fde::kernels
