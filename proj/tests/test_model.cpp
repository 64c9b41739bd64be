#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "nagfront/model.hpp"

using nagfront::ModelFamily;
using nagfront::ModelSpec;
using nagfront::Polynomial;

TEST_CASE("polynomial evaluation, calculus, and products") {
  Polynomial p({1.0, 2.0, 3.0});  // 1 + 2x + 3x^2
  CHECK(p(0.0) == 1.0);
  CHECK(p(2.0) == doctest::Approx(17.0));

  Polynomial dp = p.derivative();
  CHECK(dp.degree() == 1);
  CHECK(dp(0.0) == 2.0);
  CHECK(dp(1.0) == doctest::Approx(8.0));

  Polynomial ip = dp.antiderivative();  // 2x + 3x^2
  CHECK(ip(0.0) == 0.0);
  CHECK(ip(2.0) == doctest::Approx(16.0));

  Polynomial q({3.0, 1.0});  // 3 + x
  Polynomial prod = Polynomial({1.0, 2.0}) * q;
  REQUIRE(prod.degree() == 2);
  CHECK(prod.coefficients()[0] == doctest::Approx(3.0));
  CHECK(prod.coefficients()[1] == doctest::Approx(7.0));
  CHECK(prod.coefficients()[2] == doctest::Approx(2.0));
}

TEST_CASE("canonical family evaluators match closed forms") {
  const double b = 1.0;
  const double alpha = 0.5;
  ModelSpec m = ModelSpec::shigesada_cubic(b, alpha);

  CHECK(m.alpha() == alpha);
  CHECK(m.b() == b);
  CHECK(m.family() == ModelFamily::ShigesadaCubic);

  CHECK(m.D(0.0) == 0.0);
  CHECK(m.D(0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.D_prime(0.0) == doctest::Approx(b).epsilon(1e-15));
  CHECK(m.D_second(0.3) == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(m.f(0.0) == 0.0);
  CHECK(std::abs(m.f(alpha)) < 1e-16);
  CHECK(std::abs(m.f(1.0)) < 1e-16);
  CHECK(m.f_prime(0.0) == doctest::Approx(-alpha).epsilon(1e-15));
  CHECK(m.f_prime(1.0) == doctest::Approx(alpha - 1.0).epsilon(1e-15));
  CHECK(m.f_prime(alpha) ==
        doctest::Approx(alpha * (1.0 - alpha)).epsilon(1e-15));
}

TEST_CASE("potential has exact rational values for rational parameters") {
  // b = 1, alpha = 1/2: the potential at 1 is 1/30 - 1/40 + 1/20 - 1/24.
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  CHECK(m.potential(1.0) == doctest::Approx(1.0 / 60.0).epsilon(1e-14));
  CHECK(m.potential(0.5) == doctest::Approx(-3.0 / 640.0).epsilon(1e-14));
  CHECK(m.potential(0.0) == 0.0);

  // b = 1, alpha = 5/8 balances the potential: potential(1) = 0.
  ModelSpec ms = ModelSpec::shigesada_cubic(1.0, 0.625);
  CHECK(std::abs(ms.potential(1.0)) < 1e-15);
  CHECK(ms.potential(0.5) == doctest::Approx(-7.0 / 768.0).epsilon(1e-14));
}

TEST_CASE("hamiltonian vanishes along the stationary level set") {
  // At the balanced parameters the connecting profile lives on H = 0, so
  // phi = 1/2 pairs with slope -(4/3) sqrt(7/384).
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.625);
  const double v = -(4.0 / 3.0) * std::sqrt(7.0 / 384.0);
  CHECK(std::abs(m.hamiltonian(0.5, v)) < 1e-15);
  CHECK(m.hamiltonian(0.0, 0.0) == 0.0);
  CHECK(m.hamiltonian(0.5, 0.0) ==
        doctest::Approx(-7.0 / 768.0).epsilon(1e-14));
}

TEST_CASE("threshold speed matches 2 sqrt(D(alpha) f'(alpha))") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  CHECK(nagfront::threshold_speed(m) ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));

  ModelSpec m2 = ModelSpec::shigesada_cubic(2.0, 0.25);
  const double expected = 2.0 * std::sqrt(m2.D(0.25) * m2.f_prime(0.25));
  CHECK(nagfront::threshold_speed(m2) == doctest::Approx(expected));
}

TEST_CASE("balanced alpha solves potential(1) = 0 in closed form") {
  // For the canonical family the root is (2 + 3b) / (3 + 5b).
  CHECK(nagfront::stationary_alpha(1.0) == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(nagfront::stationary_alpha(2.0) ==
        doctest::Approx(8.0 / 13.0).epsilon(1e-12));
  CHECK(nagfront::stationary_alpha(0.5) ==
        doctest::Approx(3.5 / 5.5).epsilon(1e-12));

  ModelSpec m = ModelSpec::shigesada_cubic(3.0, nagfront::stationary_alpha(3.0));
  CHECK(std::abs(m.potential(1.0)) < 1e-12);
}

TEST_CASE("hypothesis validation accepts the canonical family") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  auto report = nagfront::validate_hypotheses(m);
  CHECK(report.all_passed);
  CHECK(report.checks.size() >= 8);
  for (const auto& check : report.checks) {
    INFO(check.name);
    CHECK(check.passed);
  }
}

TEST_CASE("hypothesis validation rejects structural violations") {
  // Diffusivity u^2 - u is negative inside (0,1).
  ModelSpec bad_d = ModelSpec::general_polynomial(
      {0.0, -1.0, 1.0}, {0.0, -0.5, 1.5, -1.0}, 0.5);
  auto report = nagfront::validate_hypotheses(bad_d);
  CHECK_FALSE(report.all_passed);
  bool found = false;
  for (const auto& check : report.checks) {
    if (check.name == "D > 0 on (0,1]" && !check.passed) found = true;
  }
  CHECK(found);

  // Reaction with a shifted middle root: alpha disagrees with f.
  ModelSpec bad_f = ModelSpec::general_polynomial(
      {0.0, 1.0, 1.0}, {0.0, -0.5, 1.5, -1.0}, 0.4);
  auto report_f = nagfront::validate_hypotheses(bad_f);
  CHECK_FALSE(report_f.all_passed);
}

TEST_CASE("factories reject out-of-range parameters") {
  CHECK_THROWS_AS(ModelSpec::shigesada_cubic(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::shigesada_cubic(-1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::shigesada_cubic(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::shigesada_cubic(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::general_polynomial(
                      {0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0},
                      {0.0, -0.5, 1.5, -1.0}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("json round trip preserves both families") {
  ModelSpec m = ModelSpec::shigesada_cubic(2.0, 0.375);
  auto j = nagfront::to_json(m);
  CHECK(j["family"] == "shigesada-cubic");
  ModelSpec back = nagfront::model_from_json(j);
  CHECK(back.b() == m.b());
  CHECK(back.alpha() == m.alpha());
  CHECK(back.D(0.7) == doctest::Approx(m.D(0.7)).epsilon(1e-15));
  CHECK(back.f(0.7) == doctest::Approx(m.f(0.7)).epsilon(1e-15));

  ModelSpec g = ModelSpec::general_polynomial(
      {0.0, 1.5, 1.0}, {0.0, -0.5, 1.5, -1.0}, 0.5);
  auto jg = nagfront::to_json(g);
  CHECK(jg["family"] == "polynomial");
  ModelSpec gback = nagfront::model_from_json(jg);
  CHECK(gback.alpha() == 0.5);
  CHECK(gback.D(0.3) == doctest::Approx(g.D(0.3)).epsilon(1e-15));
  CHECK(gback.f(0.9) == doctest::Approx(g.f(0.9)).epsilon(1e-15));
}
