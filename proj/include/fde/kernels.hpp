#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fde/grid.hpp"
#include "fde/params.hpp"

namespace fde {
class PiecewiseBarrier;
}

// Hot loops in two flavours: a plain serial reference and an OpenMP version.
// Both perform identical floating-point operations per entry, so results agree
// bit for bit.
namespace fde::kernels {

/// A psi at each xi; NaN where xi lies within `corner_exclusion` (relative) of the corner.
void sweep_A_serial(const PiecewiseBarrier& b, std::span<const double> xi, std::span<double> out,
                    double corner_exclusion);
void sweep_A_omp(const PiecewiseBarrier& b, std::span<const double> xi, std::span<double> out,
                 double corner_exclusion);

/// Face flux F = (Phi_b - Phi_a)/h + mu rbar M(a,b) with Phi = v^m/m and M the
/// mean (Phi_b - Phi_a)/(Q_b - Q_a), Q = v^{m-1}/(m-1). Every V_D makes F vanish.
struct FaceFlux {
  double F = 0.0;
  double dF_da = 0.0;
  double dF_db = 0.0;
};
FaceFlux face_flux(double m, double mu, double a, double b, double inv_h, double rbar);

struct Tridiag {
  std::vector<double> lower;  // lower[i] multiplies x[i-1]
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] multiplies x[i+1]

  void resize(std::size_t n);
  [[nodiscard]] std::size_t size() const { return diag.size(); }
};

/// Solves in place (rhs becomes the solution). Throws NewtonDivergence on a zero pivot.
void thomas_solve(Tridiag& a, std::span<double> rhs);

/// Implicit-Euler residual R_i = v_i - old_i - dt/V_i (face sums), for the first
/// `unknowns` nodes; node `unknowns` (if inside the grid) holds a Dirichlet value.
/// With `outflow` the last node is an unknown and its outer face carries only
/// the drift flux mu r v.
struct Assembly {
  const ProblemParams* p = nullptr;
  const Grid* grid = nullptr;
  std::span<const double> v;
  std::span<const double> v_old;
  double dt = 0.0;
  std::size_t unknowns = 0;
  bool outflow = false;
};

struct Workspace {
  std::vector<FaceFlux> faces;
  std::vector<double> residual;
  Tridiag jac;
};

void assemble_serial(const Assembly& in, Workspace& ws);
void assemble_omp(const Assembly& in, Workspace& ws);

}  // namespace fde::kernels
