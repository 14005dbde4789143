#include <doctest.h>

#include <cmath>
#include <random>

#include "fde/errors.hpp"
#include "fde/profiles.hpp"
#include "fde/rescale.hpp"

using namespace fde;
using doctest::Approx;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("rescale") {
  TEST_CASE("tau = 0 maps to t = 0") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(2.0);
    const auto q = to_rescaled(p, f, {1.5, 0.0, 3.0});
    CHECK(q.t == 0.0);
    CHECK(q.x_radius ==
          Approx(std::sqrt(1.0 / (2 * (p.n - p.mu))) * 1.5 * std::pow(2.0, p.beta_ss)).epsilon(1e-14));
    CHECK(to_fujita_frame(p, f, {1.5, 0.0, 3.0}).s == 0.0);
  }

  TEST_CASE("time map") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(1.0);
    CHECK(time_to_extinction(p, f, 0.1) == Approx(0.49658530379140951470).epsilon(1e-14));
    const double tau = physical_time(p, f, 0.1);
    CHECK(rescaled_time(p, f, tau) == Approx(0.1).epsilon(1e-12));
    CHECK(physical_time(p, f, 60.0) == Approx(1.0).epsilon(1e-15));
    double prev = -1.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = rescaled_time(p, f, 0.9999 * i / 10000.0);
      CHECK(t > prev);
      prev = t;
    }
    CHECK_THROWS_AS(rescaled_time(p, f, 1.0), DomainError);
    CHECK_THROWS_AS(to_rescaled(p, f, {1.0, -0.1, 1.0}), DomainError);
    CHECK_THROWS_AS(make_frame(0.0), DomainError);
  }

  TEST_CASE("round trips on random triples") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(1.3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const PhysicalPoint pt{std::pow(10.0, -2 + 4 * u(rng)), 1.3 * 0.999 * u(rng),
                             std::pow(10.0, -3 + 6 * u(rng))};
      const auto q = to_rescaled(p, f, pt);
      const auto back = from_rescaled(p, f, q);
      CHECK(rel(back.y_radius, pt.y_radius) < 1e-12);
      CHECK(std::abs(back.tau - pt.tau) < 1e-12 * f.T);
      CHECK(rel(back.u_value, pt.u_value) < 1e-12);
      CHECK(rel(time_to_extinction(p, f, q.t), f.T - pt.tau) < 1e-12);
      const auto w = to_fujita_frame(p, f, pt);
      CHECK(std::abs(w.s - 2.0 * q.t / p.beta_ss) < 1e-12 * std::max(1.0, w.s));
    }
  }

  TEST_CASE("Barenblatt is stationary under the transform") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(1.0);
    for (double D : {0.5, 1.0, 2.0}) {
      for (double y : {0.1, 0.7, 2.0, 9.0}) {
        for (double tau : {0.0, 0.4, 0.9, 0.999}) {
          const double u = eval_barenblatt_physical(p, {D, f.T}, y, tau);
          const auto q = to_rescaled(p, f, {y, tau, u});
          CHECK(rel(q.v_value, eval_rescaled_profile(p, D, q.x_radius)) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("singular solution is time independent in the Fujita frame") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(1.0);
    const double expected = p.k_star * std::pow(1 - p.m, -1 / (1 - p.m)) * std::pow(2.0, -p.mu);
    for (double tau : {0.0, 0.5, 0.99}) {
      const double u = eval_barenblatt_physical(p, {0.0, f.T}, 2.0, tau);
      CHECK(rel(to_fujita_frame(p, f, {2.0, tau, u}).w_value, expected) < 1e-12);
    }
  }

  TEST_CASE("sup-norm translation gives theta") {
    const auto p = make_params(6, 0.2);
    const auto f = make_frame(1.0);
    // ||v|| = e^{0.5 t}; slope of log||u|| vs log(T - tau) between two times
    const double t1 = 1.0, t2 = 3.0;
    const double u1 = physical_sup_norm(p, f, t1, std::exp(0.5 * t1));
    const double u2 = physical_sup_norm(p, f, t2, std::exp(0.5 * t2));
    const double slope = std::log(u2 / u1) /
                         std::log(time_to_extinction(p, f, t2) / time_to_extinction(p, f, t1));
    CHECK(slope == Approx(2.0714285714285714286).epsilon(1e-12));
  }
}
