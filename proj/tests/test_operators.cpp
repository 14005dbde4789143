#include <doctest.h>

#include <cmath>

#include "fde/barriers.hpp"
#include "fde/errors.hpp"
#include "fde/operators.hpp"
#include "fde/profiles.hpp"

using namespace fde;
using doctest::Approx;

TEST_SUITE("operators") {
  TEST_CASE("A on the quadratic core") {
    const auto p = make_params(6, 0.2);
    const double kappa = 0.2;
    const double eps = kappa / p.n;
    const double direct = eval_A(p, kappa, QuadraticPiece{eps}, 1.0);
    const double closed = eval_A_closed_form(p, kappa, QuadraticPiece{eps}, 1.0);
    CHECK(direct == Approx(-0.22555555555555555556).epsilon(1e-13));
    CHECK(std::abs(direct - closed) < 1e-12 * std::abs(closed));
  }

  TEST_CASE("A on a pure power with a root exponent") {
    const auto p = make_params(6, 0.2);
    const double direct = eval_A(p, 0.2, PowerPiece{0.1, 0.5}, 1.0);
    CHECK(direct == Approx(-0.020625).epsilon(1e-13));
    CHECK(eval_A_closed_form(p, 0.2, PowerPiece{0.1, 0.5}, 1.0) == Approx(direct).epsilon(1e-12));
  }

  TEST_CASE("A of the zero profile vanishes") {
    const auto p = make_params(6, 0.2);
    CHECK(eval_A(p, 0.2, PsiDerivs{0.0, 0.0, 0.0}, 1.3) == 0.0);
  }

  TEST_CASE("closed forms agree with the generic formula") {
    const auto p = make_params(6, 0.2);
    const double kappa = 0.2;
    const PsiPiece pieces[] = {QuadraticPiece{1.0 / 30}, PowerPiece{0.7, 0.5},
                               PowerPiece{0.3, 0.8},
                               TwoPowerPiece{std::log(150.0), std::log(330.0), 0.5, 0.65}};
    for (const auto& piece : pieces) {
      for (double xi : log_grid(1e-3, 1e3, 1000)) {
        double scale = 0.0;
        const double c = eval_A_closed_form(p, kappa, piece, xi, &scale);
        const double g = eval_A(p, kappa, piece, xi);
        scale = std::max(scale, eval_A_scale(p, kappa, eval_piece(piece, xi), xi));
        CHECK(std::abs(c - g) <= 1e-12 * scale);
      }
    }
  }

  TEST_CASE("polynomials of the two-power tail") {
    const auto p = make_params(6, 0.2);
    CHECK(tail_polynomial(p, 0.2, 0.7) == Approx(-0.02).epsilon(1e-12));
    CHECK(tail_polynomial(p, 0.2, 0.65) == Approx(-0.0225).epsilon(1e-12));
    CHECK(std::abs(tail_polynomial(p, 0.2, 0.5)) < 1e-15);
    // exact rationals from the symbolic expansion
    CHECK(cross_polynomial(p, 0.5, 0.7) == Approx(987.0 / 200).epsilon(1e-14));
    CHECK(cross_polynomial(p, 0.5, 0.65) == Approx(237.0 / 50).epsilon(1e-14));
    CHECK(cross_polynomial(p, 0.5, 0.5) ==
          Approx(2 * 0.5 * (p.n - 2 - 0.5) + p.mu * 0.25).epsilon(1e-14));
    CHECK(drift_coefficient(p, 0.5) == Approx(2.0625).epsilon(1e-14));
    CHECK(drift_coefficient(p, 0.7) == Approx(2.9225).epsilon(1e-14));
  }

  TEST_CASE("piece validation") {
    CHECK_THROWS_AS(validate_piece(QuadraticPiece{0.0}), DomainError);
    CHECK_THROWS_AS(validate_piece(QuadraticPiece{1.0}), DomainError);
    CHECK_THROWS_AS(validate_piece(PowerPiece{-1.0, 0.5}), DomainError);
    CHECK_THROWS_AS(validate_piece(PowerPiece{1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate_piece(TwoPowerPiece{0.0, 0.0, 0.7, 0.5}), DomainError);
    CHECK_NOTHROW(validate_piece(TwoPowerPiece{0.0, 0.0, 0.5, 0.7}));
  }

  TEST_CASE("residual_P argument checks") {
    const auto p = make_params(6, 0.2);
    CHECK_THROWS_AS(residual_P(p, Jet{1.0, 0, 0, 0}, 0.0), DomainError);
    CHECK_THROWS_AS(eval_A(p, 0.2, QuadraticPiece{0.1}, 0.0), DomainError);
  }

  TEST_CASE("finite-difference residual is second order") {
    const auto p = make_params(6, 0.2);
    const ScalarField v1 = [&](double r, double) { return eval_rescaled_profile(p, 1.0, r); };
    for (double r : {0.5, 1.0, 3.0}) {
      const double e1 = std::abs(residual_P_fd(p, v1, r, 1.0, 1e-2));
      const double e2 = std::abs(residual_P_fd(p, v1, r, 1.0, 5e-3));
      CHECK(e1 < 1e-3);
      CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
    }
    CHECK_THROWS_AS(residual_P_fd(p, v1, 0.001, 1.0, 0.01), DomainError);
  }

  TEST_CASE("finite-difference residual of the explicit family") {
    const auto p = make_params(6, 0.2);
    const ScalarField v = [&](double r, double t) { return eval_mu_tail_family(p, 2.0, r, t); };
    const Jet j = jet_mu_tail_family(p, 2.0, 1.5, 0.3);
    const double scale = residual_P_scale(p, j, 1.5);
    CHECK(std::abs(residual_P_fd(p, v, 1.5, 0.3, 1e-4)) < 1e-5 * scale);
  }
}
