#include <doctest.h>

#include <cmath>
#include <vector>

#include "fde/barriers.hpp"
#include "fde/grid.hpp"
#include "fde/kernels.hpp"
#include "fde/profiles.hpp"
#include "fde/solver.hpp"

using namespace fde;
using doctest::Approx;

TEST_SUITE("kernels") {
  TEST_CASE("grid layout") {
    const auto p = make_params(6, 0.2);
    const Grid g = make_grid(p, 40.0, 800, 1.02);
    CHECK(g.n_nodes() == 801);
    CHECK(g.r.front() == 0.0);
    CHECK(g.r.back() == Approx(40.0).epsilon(1e-14));
    CHECK(g.r[1] == Approx(40.0 * 0.02 / (std::pow(1.02, 800) - 1)).epsilon(1e-12));
    for (std::size_t i = 1; i < g.n_nodes(); ++i) CHECK(g.r[i] > g.r[i - 1]);
    double vol = 0.0;
    for (double v : g.volume) vol += v;
    CHECK(vol == Approx(std::pow(40.0, 6) / 6).epsilon(1e-12));
    CHECK_THROWS(make_grid(p, 40.0, 800, 1.06));
    CHECK_THROWS(make_grid(p, 40.0, 800, 0.99));
  }

  TEST_CASE("face flux vanishes on every V_D") {
    const auto p = make_params(6, 0.2);
    for (double D : {0.01, 0.1, 1.0, 10.0}) {
      for (double ra : {0.0, 0.3, 2.0, 15.0}) {
        const double rb = ra + 0.05 * (1 + ra);
        const double a = eval_rescaled_profile(p, D, ra);
        const double b = eval_rescaled_profile(p, D, rb);
        const auto f = kernels::face_flux(p.m, p.mu, a, b, 1.0 / (rb - ra), 0.5 * (ra + rb));
        const double scale = std::abs(std::pow(b, p.m) - std::pow(a, p.m)) / p.m / (rb - ra);
        CHECK(std::abs(f.F) <= 1e-11 * scale);
      }
    }
  }

  TEST_CASE("face flux derivatives match differences") {
    const auto p = make_params(6, 0.2);
    const double a = 0.7, b = 0.5, ih = 10.0, rb = 1.1;
    const auto f = kernels::face_flux(p.m, p.mu, a, b, ih, rb);
    const double h = 1e-6;
    const double da = (kernels::face_flux(p.m, p.mu, a + h, b, ih, rb).F -
                       kernels::face_flux(p.m, p.mu, a - h, b, ih, rb).F) / (2 * h);
    const double db = (kernels::face_flux(p.m, p.mu, a, b + h, ih, rb).F -
                       kernels::face_flux(p.m, p.mu, a, b - h, ih, rb).F) / (2 * h);
    CHECK(f.dF_da == Approx(da).epsilon(1e-6));
    CHECK(f.dF_db == Approx(db).epsilon(1e-6));
    // equal neighbours: pure drift mu r v
    const auto e = kernels::face_flux(p.m, p.mu, 0.4, 0.4, ih, rb);
    CHECK(e.F == Approx(p.mu * rb * 0.4).epsilon(1e-14));
  }

  TEST_CASE("Thomas solve against a direct product") {
    const std::size_t n = 50;
    kernels::Tridiag a;
    a.resize(n);
    std::vector<double> x(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      a.lower[i] = i ? -1.0 - 0.01 * i : 0.0;
      a.upper[i] = i + 1 < n ? -0.5 : 0.0;
      a.diag[i] = 4.0 + 0.1 * i;
      x[i] = std::sin(0.3 * i) + 2.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = a.diag[i] * x[i] + (i ? a.lower[i] * x[i - 1] : 0.0) +
               (i + 1 < n ? a.upper[i] * x[i + 1] : 0.0);
    }
    kernels::thomas_solve(a, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK(rhs[i] == Approx(x[i]).epsilon(1e-13));
  }

  TEST_CASE("serial and OpenMP assembly agree bit for bit") {
    const auto p = make_params(6, 0.2);
    const Grid g = make_grid(p, 40.0, 2000, 1.004);
    std::vector<double> v(g.n_nodes()), old(g.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = eval_rescaled_profile(p, 0.3, g.r[i]) * (1.0 + 0.01 * std::sin(g.r[i]));
      old[i] = eval_rescaled_profile(p, 0.3, g.r[i]);
    }
    for (bool outflow : {false, true}) {
      const kernels::Assembly in{&p, &g, v, old, 1e-3, outflow ? g.n_nodes() : g.n_nodes() - 1,
                                 outflow};
      kernels::Workspace s, o;
      kernels::assemble_serial(in, s);
      kernels::assemble_omp(in, o);
      CHECK(s.residual == o.residual);
      CHECK(s.jac.diag == o.jac.diag);
      CHECK(s.jac.lower == o.jac.lower);
      CHECK(s.jac.upper == o.jac.upper);
    }
  }

  TEST_CASE("serial and OpenMP certificate sweeps agree") {
    const auto p = make_params(6, 0.2);
    const TailSpec tail{5.0, 0.5, 0.5, 1.0};
    const auto b = build_supersolution(p, tail, make_initial_data(p, tail).info);
    const auto xi = log_grid(1e-4, 1e6, 20000);
    std::vector<double> s(xi.size()), o(xi.size());
    kernels::sweep_A_serial(b.barrier, xi, s, 1e-9);
    kernels::sweep_A_omp(b.barrier, xi, o, 1e-9);
    for (std::size_t i = 0; i < xi.size(); ++i) {
      if (std::isnan(s[i])) CHECK(std::isnan(o[i]));
      else CHECK(s[i] == o[i]);
    }
  }
}
