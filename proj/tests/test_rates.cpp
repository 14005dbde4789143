#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fde/barriers.hpp"
#include "fde/errors.hpp"
#include "fde/params.hpp"
#include "fde/rates.hpp"
#include "fde/rescale.hpp"
#include "fde/solver.hpp"

using namespace fde;
using doctest::Approx;

namespace {

const ProblemParams P = make_params(6, 0.2);

// records at t = 0, 0.01, ..., 4 on a fixed radial grid
RadialSolution synthetic(double gamma, double lambda, double l) {
  RadialSolution sol;
  for (double r = 0.0; r <= 10.0; r += 0.25) sol.r.push_back(r);
  for (int k = 0; k <= 400; ++k) {
    const double t = 0.01 * k;
    sol.times.push_back(t);
    std::vector<double> v(sol.r.size());
    v[0] = 3.0 * std::exp(gamma * t);
    for (std::size_t i = 1; i < sol.r.size(); ++i) {
      const double r = sol.r[i];
      v[i] = std::pow(r, -P.mu) * (1.0 - 0.4 * std::exp(-lambda * t) * std::pow(r, P.mu - l));
    }
    sol.sup_norm.push_back(v[0]);
    sol.fields.push_back(std::move(v));
  }
  return sol;
}

RateTableConfig reference_config() {
  RateTableConfig rc;
  rc.tail = TailSpec{5.0, 0.5, 0.5, 1.0};
  return rc;
}

const std::vector<RateRow>& reference_table() {
  static const std::vector<RateRow> rows = [] {
    const std::vector<double> ls{4.6, 4.8, 5.0, 5.1};
    return rate_table(P, ls, reference_config());
  }();
  return rows;
}

}  // namespace

TEST_SUITE("rates") {
  TEST_CASE("line fit is exact on exact data") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
      x.push_back(0.1 * i);
      y.push_back(-1.5 + 0.3 * x.back());
    }
    const RateFit f = fit_line(x, y);
    CHECK(f.exponent == Approx(0.3).epsilon(1e-13));
    CHECK(f.intercept == Approx(-1.5).epsilon(1e-13));
    CHECK(f.rms_residual < 1e-14);
    CHECK(f.samples == 20);
  }

  TEST_CASE("too few samples") {
    std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> y(x.size(), 1.0);
    CHECK_THROWS_AS(fit_line(x, y), FitError);
    std::vector<double> flat(12, 2.0), yy(12, 1.0);
    CHECK_THROWS_AS(fit_line(flat, yy), FitError);
    const RadialSolution sol = synthetic(0.5, 0.5, 5.0);
    CHECK_THROWS_AS(fit_growup(sol, FitWindow{1.0, 1.05}), FitError);
    CHECK_THROWS_AS(fit_growup(sol, FitWindow{2.0, 1.0}), FitError);
  }

  TEST_CASE("synthetic growth, decay and extinction") {
    const double gamma = 0.7;
    const double lambda = 0.35;
    const RadialSolution sol = synthetic(gamma, lambda, 5.0);
    const FitWindow w{1.0, 4.0};
    const RateFit g = fit_growup(sol, w);
    CHECK(std::abs(g.exponent - gamma) < 1e-12);
    CHECK(g.samples == 301);

    // r = 5 is a node, so the interpolated gap is exact
    const RateFit d = fit_outer_decay(P, sol, 5.0, w);
    CHECK(std::abs(-d.exponent - lambda) < 1e-12);
    const RateFit d2 = fit_outer_decay(P, sol, 4.9, w);
    CHECK(std::abs(-d2.exponent - lambda) < 1e-12);

    const RateFit e = fit_extinction(P, sol, make_frame(1.0), w);
    CHECK(std::abs(e.exponent - theta_of_gamma(P, gamma)) < 1e-12);
  }

  TEST_CASE("theta without growth") {
    CHECK(std::abs(theta_of_gamma(P, 0.0) - 15.0 / 7.0) < 1e-14);
    const RadialSolution sol = synthetic(0.0, 0.5, 5.0);
    const RateFit e = fit_extinction(P, sol, make_frame(2.0), FitWindow{1.0, 4.0});
    CHECK(std::abs(e.exponent - 15.0 / 7.0) < 1e-12);
  }

  TEST_CASE("negative gap is reported") {
    RadialSolution sol = synthetic(0.5, 0.5, 5.0);
    for (auto& v : sol.fields) {
      for (std::size_t i = 1; i < v.size(); ++i) v[i] = 1.01 * std::pow(sol.r[i], -P.mu);
    }
    CHECK_THROWS_AS(fit_outer_decay(P, sol, 5.0, FitWindow{1.0, 4.0}), GapSignError);
  }

  TEST_CASE("barrier envelopes") {
    const TailSpec tail{5.0, 0.5, 0.5, 1.0};
    const InitialData d = make_initial_data(P, tail);
    const RateSet rs = derive_rates(P, 5.0);
    for (const auto& b : {build_subsolution(P, tail, d.info).barrier,
                          build_supersolution(P, tail, d.info).barrier}) {
      std::vector<double> t, y;
      for (int k = 0; k <= 40; ++k) {
        t.push_back(0.1 * k);
        y.push_back(std::log(lift(b, 0.0, t.back())));
      }
      CHECK(std::abs(fit_line(t, y).exponent - P.mu * rs.kappa) < 1e-12);
    }
    const auto sub = build_subsolution(P, tail, d.info).barrier;
    std::vector<double> t, y;
    for (int k = 0; k <= 40; ++k) {
      t.push_back(10.0 + 0.05 * k);
      y.push_back(std::log(std::pow(5.0, -P.mu) - lift(sub, 5.0, t.back())));
    }
    CHECK(std::abs(fit_line(t, y).exponent + rs.lambda) < 1e-3);
  }

  TEST_CASE("rate table rows") {
    const auto& rows = reference_table();
    REQUIRE(rows.size() == 4);
    const double ls[] = {4.6, 4.8, 5.0, 5.1};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const RateRow& r = rows[i];
      CAPTURE(r.l);
      CHECK(r.error.empty());
      CHECK(r.l == ls[i]);
      CHECK(r.kappa == Approx(kappa_of(P, r.l)).epsilon(1e-14));
      CHECK(std::abs(r.gamma_pred / P.mu - r.kappa) < 1e-14);
      CHECK(std::abs(r.theta_pred - theta_of_gamma(P, r.gamma_pred)) < 1e-12);
      CHECK(r.gamma_fit >= 0.0);
      CHECK(r.gamma_fit <= P.mu * P.n);
      CHECK(r.lambda_fit > 0.0);
      CHECK(r.growup.samples == 301);
      CHECK(std::isfinite(r.boundary_shift));
      CHECK(r.boundary_tol > 0.0);
      if (i > 0) CHECK(r.gamma_pred > rows[i - 1].gamma_pred);
    }
  }

  TEST_CASE("row errors are captured") {
    RateTableConfig rc = reference_config();
    rc.boundary_gate = false;
    rc.solver.t_end = 1.0;
    rc.window = FitWindow{0.2, 1.0};
    const RateRow bad_l = rate_row(P, 4.4, rc);
    CHECK_FALSE(bad_l.error.empty());
    CHECK(std::isnan(bad_l.gamma_fit));
    CHECK_FALSE(bad_l.within(Tolerances{}));

    rc.r_probe = 11.0;
    const RateRow bad_probe = rate_row(P, 5.0, rc);
    CHECK(bad_probe.error.find("r_max/4") != std::string::npos);

    rc.r_probe = 5.0;
    const std::vector<double> ls{4.4, 5.0};
    const auto rows = rate_table(P, ls, rc);
    CHECK_FALSE(rows[0].error.empty());
    CHECK(rows[1].error.empty());
    CHECK(std::isnan(rows[1].boundary_shift));
    CHECK_FALSE(rows[1].boundary_ok);
  }

  TEST_CASE("csv layout") {
    const auto& rows = reference_table();
    const std::string csv = rates_csv(rows);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "l,kappa,gamma_pred,gamma_fit,lambda_pred,lambda_fit,theta_pred,theta_fit,boundary_ok");
    int lines = 0;
    for (std::string line; std::getline(in, line);) {
      ++lines;
      CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
    CHECK(lines == 4);
    CHECK(csv.find("\n5,0.2") != std::string::npos);
  }
}
