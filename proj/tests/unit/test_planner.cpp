#include <doctest.h>

#include <cmath>

#include "ceqaoa/fejer.hpp"
#include "ceqaoa/planner.hpp"

using namespace ceqaoa;

TEST_CASE("ratio parameter and bounds") {
  CHECK(ratio_parameter(1, kPi, 0.5) == doctest::Approx(2.0));
  CHECK(ratio_parameter(5, 1.0, 0.0) == 0.0);
  CHECK(ratio_parameter(0, kPi, 1.0) == doctest::Approx(1.0));

  auto a = ratio_bounds(2.0, 0.5);
  CHECK(a.tight == doctest::Approx(0.8));
  CHECK(a.simple == doctest::Approx(2.0 / 3));
  CHECK(ratio_bounds(0.3, 1.0).tight == doctest::Approx(1.0));
  auto b = ratio_bounds(1.0, 0.25);
  CHECK(b.tight == doctest::Approx(1 / 1.75));
  CHECK(b.simple == doctest::Approx(0.5));
  auto z = ratio_bounds(0.0, 0.4);
  CHECK(z.tight == 0.0);
  CHECK(z.simple == 0.0);
}

TEST_CASE("success bound equals the tight ratio form") {
  for (int p = 0; p <= 8; ++p)
    for (double c : {0.05, 0.3, 0.9})
      for (double d : {0.2, 1.3, kPi}) {
        const double x = ratio_parameter(p, d, c);
        CHECK(std::abs(success_lower_bound(p, c, d) - ratio_bounds(x, c).tight) < 1e-12);
        CHECK(success_lower_bound(p, c, d) >= x / (1 + x) - 1e-12);
      }
}

TEST_CASE("shot budget") {
  CHECK(shot_budget(1.0, std::exp(-1.0)) == doctest::Approx(2.0));
  CHECK(shot_budget(1e12, 0.05) == doctest::Approx(std::log(20.0)));
  CHECK(shot_budget(0.1, 0.01) == doctest::Approx(11 * std::log(100.0)));
  CHECK(std::isinf(shot_budget(0.0, 0.1)));
  CHECK_THROWS_AS(shot_budget(1.0, 1.0), PreconditionError);
}

TEST_CASE("regimes") {
  CHECK(classify_regime(0.01).regime == Regime::R1);
  auto r2 = classify_regime(1.0, 0.5);
  CHECK(r2.regime == Regime::R2);
  REQUIRE(r2.threshold_q0.has_value());
  CHECK(*r2.threshold_q0 == doctest::Approx(1.0 / 3));
  CHECK(classify_regime(100.0).regime == Regime::R3);
  CHECK_FALSE(classify_regime(100.0).threshold_q0.has_value());
}

TEST_CASE("depth") {
  CHECK(depth_formula(0.1, 0.5, kPi / 2) == 4);
  CHECK(depth_for_target(0.1, 0.5, kPi / 2) == 4);
  CHECK(depth_for_target(0.5, 0.5, kPi) == 0);
  CHECK(depth_for_target(0.2, 1.0, 0.4) == 0);
  CHECK_THROWS_AS(depth_for_target(0.0, 0.5, 1.0), PreconditionError);
  CHECK_THROWS_AS(depth_for_target(0.1, 0.5, 0.0), PreconditionError);
  // minimal: one order less misses the target
  for (double eps : {0.01, 0.1, 0.3})
    for (double c : {0.02, 0.2, 0.7})
      for (double d : {0.1, 1.0, 3.0}) {
        const int p = depth_for_target(eps, c, d);
        CHECK(success_lower_bound(p, c, d) >= 1 - eps);
        if (p > 0) CHECK(success_lower_bound(p - 1, c, d) < 1 - eps);
      }
}

TEST_CASE("minimum envelope mass") {
  CHECK(cmin(kPi, 0.1, 2) == doctest::Approx(0.5));
  CHECK(cmin(1e-9, 0.1, 3) == doctest::Approx(1.0));
  CHECK(cmin(1.0, 0.1, 100000) < 1e-6);
  auto curve = cmin_curve({0.5, 1.0, 2.0, kPi}, 0.1, 3);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] < curve[i - 1]);
  CHECK_THROWS_AS(cmin_curve({}, 0.1, 1), PreconditionError);
  // at C = C_min the bound lands exactly on 1 - eps
  CHECK(success_lower_bound(3, cmin(1.2, 0.2, 3), 1.2) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("angle and lobe helpers") {
  CHECK(gamma_safe(1, 1.0) == doctest::Approx(kPi));
  CHECK(gamma_safe(4, kPi) == doctest::Approx(0.25));
  CHECK(gamma_safe(3, 2.0) == doctest::Approx(gamma_safe(3, 1.0) / 2));
  CHECK(gamma_safe(0, 2.0) == doctest::Approx(kPi / 2));
  CHECK(main_lobe_constant(1e-6) == doctest::Approx(1.0));
  CHECK(main_lobe_constant(kPi / 2) == doctest::Approx(8 / (kPi * kPi)));
  CHECK_THROWS_AS(main_lobe_constant(kPi), PreconditionError);
}

TEST_CASE("order reduction") {
  auto r = order_reduction(4.0, 3, 1, 1.0, 0.1);
  CHECK(r.x_reduced == doctest::Approx(1.0));
  CHECK(r.shots == doctest::Approx(2 * std::log(10.0)));
  CHECK(order_reduction(2.5, 4, 4, 1.0, 0.1).x_reduced == doctest::Approx(2.5));
  // large x0: reduced budget over full budget stays below the order ratio squared over c'
  const double x0 = 1e3;
  for (int pp = 1; pp <= 6; ++pp) {
    auto red = order_reduction(x0, 6, pp, 0.5, 0.05);
    const double ratio = red.shots / shot_budget(x0, 0.05);
    CHECK(ratio <= std::pow(7.0 / (pp + 1), 2) / 0.5 + 1e-12);
  }
  CHECK_THROWS_AS(order_reduction(1.0, 2, 3, 1.0, 0.1), PreconditionError);
  CHECK_THROWS_AS(order_reduction(1.0, 2, 1, 0.0, 0.1), PreconditionError);
}

TEST_CASE("lipschitz constant and certificate") {
  CHECK(lipschitz_envelope_bound(1, 1.0) == 2.0);
  CHECK(lipschitz_envelope_bound(0, 7.0) == 0.0);
  auto cert = make_certificate(1, 0.5, kPi, 0.1);
  CHECK(cert.x == doctest::Approx(2.0));
  CHECK(cert.q0_bound == doctest::Approx(0.8));
  CHECK(cert.regime == Regime::R3);
  CHECK(cert.shots == doctest::Approx(1.5 * std::log(10.0)));
}
