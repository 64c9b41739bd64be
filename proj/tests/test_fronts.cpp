#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nagfront/fronts.hpp"
#include "nagfront/model.hpp"

using nagfront::coefficient_bound;
using nagfront::DecayReport;
using nagfront::FrontCase;
using nagfront::FrontProfile;
using nagfront::front_case_from_code;
using nagfront::GridConfig;
using nagfront::is_increasing;
using nagfront::is_stationary;
using nagfront::ModelSpec;
using nagfront::profile_residual;
using nagfront::sample_phi;
using nagfront::solve_stationary_front;
using nagfront::solve_traveling_front;
using nagfront::stationary_alpha;
using nagfront::verify_decay;

namespace {

bool thrown_message_contains(const std::function<void()>& call,
                             const std::string& needle) {
  try {
    call();
  } catch (const std::exception& error) {
    return std::string(error.what()).find(needle) != std::string::npos;
  }
  return false;
}

// Positive decay rate of the slow stable eigenvalue at the rest point
// (alpha, 0) of the traveling-wave system.
double slow_rate_at_alpha(const ModelSpec& model, double c) {
  const double d = model.D(model.alpha());
  const double fp = model.f_prime(model.alpha());
  return (c - std::sqrt(c * c - 4.0 * d * fp)) / (2.0 * d);
}

}  // namespace

TEST_CASE("case codes round-trip and classify") {
  CHECK(nagfront::to_code(FrontCase::StationaryIncreasing) == "sN-inc");
  CHECK(nagfront::to_code(FrontCase::StationaryDecreasing) == "sN-dec");
  CHECK(nagfront::to_code(FrontCase::DegenerateTraveling) == "Nd");
  CHECK(nagfront::to_code(FrontCase::NondegenerateTraveling) == "Nn");
  for (FrontCase kind :
       {FrontCase::StationaryIncreasing, FrontCase::StationaryDecreasing,
        FrontCase::DegenerateTraveling, FrontCase::NondegenerateTraveling}) {
    CHECK(front_case_from_code(nagfront::to_code(kind)) == kind);
  }
  CHECK_THROWS_AS(front_case_from_code("sN"), std::invalid_argument);

  CHECK(is_stationary(FrontCase::StationaryIncreasing));
  CHECK(is_stationary(FrontCase::StationaryDecreasing));
  CHECK_FALSE(is_stationary(FrontCase::DegenerateTraveling));
  CHECK(is_increasing(FrontCase::StationaryIncreasing));
  CHECK(is_increasing(FrontCase::DegenerateTraveling));
  CHECK_FALSE(is_increasing(FrontCase::StationaryDecreasing));
  CHECK_FALSE(is_increasing(FrontCase::NondegenerateTraveling));
}

TEST_CASE("stationary decreasing front matches the closed-form slope") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile sd = solve_stationary_front(m, false);

  CHECK(sd.kind == FrontCase::StationaryDecreasing);
  CHECK(sd.c == 0.0);
  CHECK(sd.u_minus == 1.0);
  CHECK(sd.u_plus == 0.0);
  CHECK(sd.x[sd.phase_index] == 0.0);
  CHECK(sd.phi[sd.phase_index] == 0.5);
  CHECK(sd.residual_max < 1e-9);

  // phi_x at the level phi = 1/2 has the closed form -(4/3) sqrt(7/384) for
  // b = 1, alpha = 5/8.
  CHECK(sd.phi_x[sd.phase_index] ==
        doctest::Approx(-(4.0 / 3.0) * std::sqrt(7.0 / 384.0)).epsilon(1e-9));

  // The degenerate side touches down at finite distance; the left tail is a
  // genuine exponential approach to 1.
  CHECK(sd.L_plus > 3.0);
  CHECK(sd.L_plus < 3.04);
  CHECK(sd.L_minus == doctest::Approx(30.6161).epsilon(1e-3));

  CHECK(std::is_sorted(sd.phi.rbegin(), sd.phi.rend()));
  CHECK(sd.phi.front() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sd.phi.back() == doctest::Approx(1e-6).epsilon(1e-3));

  // Uniform grid with the phase node pinned exactly at zero.
  const std::size_t n = sd.x.size();
  CHECK(n == 4001);
  CHECK(sd.x[1] - sd.x[0] ==
        doctest::Approx(sd.x[n - 1] - sd.x[n - 2]).epsilon(1e-12));
  CHECK(sd.L_minus == -sd.x.front());
  CHECK(sd.L_plus == sd.x.back());

  // residual_max is the interior maximum of the published residual field.
  const std::vector<double> r = profile_residual(sd, m);
  REQUIRE(r.size() == n);
  double interior = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    interior = std::max(interior, std::abs(r[i]));
  }
  CHECK(interior == doctest::Approx(sd.residual_max).epsilon(1e-12));
}

TEST_CASE("stationary increasing front mirrors the decreasing one") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile sd = solve_stationary_front(m, false);
  FrontProfile si = solve_stationary_front(m, true);

  CHECK(si.kind == FrontCase::StationaryIncreasing);
  CHECK(si.u_minus == 0.0);
  CHECK(si.u_plus == 1.0);
  CHECK(si.phi_x[si.phase_index] ==
        doctest::Approx(-sd.phi_x[sd.phase_index]).epsilon(1e-12));
  CHECK(si.residual_max < 1e-9);

  double worst = 0.0;
  for (std::size_t i = 0; i < si.x.size(); i += 17) {
    const double xq = -si.x[i];
    if (xq < sd.x.front() || xq > sd.x.back()) continue;
    worst = std::max(worst, std::abs(sample_phi(sd, xq) - si.phi[i]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("stationary decay splits exponential tail and finite touchdown") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile sd = solve_stationary_front(m, false);
  const std::vector<DecayReport> reports = verify_decay(sd, m);
  REQUIRE(reports.size() == 2);

  const DecayReport& left = reports[0];
  CHECK(left.side == DecayReport::Side::MinusInfinity);
  CHECK(left.law == DecayReport::Law::Exponential);
  CHECK(left.conclusive);
  CHECK(left.window_points > 100);
  CHECK(left.window_hi < 0.0);
  CHECK(left.predicted_rate == doctest::Approx(std::sqrt(3.0) / 4.0));
  CHECK(left.fitted_rate == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-4));
  CHECK(left.relative_error < 1e-4);

  // The quadratic touchdown at finite x is not an algebraic tail in x; the
  // log-log fit against the predicted exponent -2 runs far away from it.
  const DecayReport& right = reports[1];
  CHECK(right.side == DecayReport::Side::PlusInfinity);
  CHECK(right.law == DecayReport::Law::Algebraic);
  CHECK(right.conclusive);
  CHECK(right.predicted_rate == doctest::Approx(-2.0));
  CHECK(right.fitted_rate < -5.0);

  CHECK(coefficient_bound(sd, m) ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-4));
}

TEST_CASE("degenerate traveling front stays within the jet-tail floor") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  FrontProfile nd = solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0);

  CHECK(nd.kind == FrontCase::DegenerateTraveling);
  CHECK(nd.u_minus == 0.0);
  CHECK(nd.u_plus == 0.5);
  CHECK(nd.phi[nd.phase_index] == 0.25);
  CHECK(nd.residual_max < 1e-8);
  CHECK(nd.phi_x[nd.phase_index] == doctest::Approx(0.04448085).epsilon(1e-5));
  CHECK(std::is_sorted(nd.phi.begin(), nd.phi.end()));

  const std::vector<DecayReport> reports = verify_decay(nd, m);
  REQUIRE(reports.size() == 2);

  const DecayReport& left = reports[0];
  CHECK(left.law == DecayReport::Law::Exponential);
  CHECK(left.conclusive);
  CHECK(left.predicted_rate == doctest::Approx(0.5));
  CHECK(left.fitted_rate == doctest::Approx(0.5).epsilon(1e-3));

  // The orbit enters (alpha, 0) along the slow stable eigenvector, so the
  // fitted rate sits on the slow eigenvalue; the predicted rate carries the
  // fast one and the mismatch is reported, not hidden.
  const DecayReport& right = reports[1];
  CHECK(right.law == DecayReport::Law::Exponential);
  CHECK(right.conclusive);
  CHECK(right.predicted_rate == doctest::Approx(1.0));
  CHECK(right.fitted_rate ==
        doctest::Approx(slow_rate_at_alpha(m, 1.0)).epsilon(1e-3));
  CHECK(right.relative_error == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  CHECK(coefficient_bound(nd, m) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("degenerate tail rate follows the slow eigenvalue across speeds") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  double previous = std::numeric_limits<double>::infinity();
  for (double c : {1.0, 1.5, 2.0}) {
    FrontProfile nd = solve_traveling_front(m, FrontCase::DegenerateTraveling, c);
    const std::vector<DecayReport> reports = verify_decay(nd, m);
    REQUIRE(reports.size() == 2);
    const double fitted = reports[1].fitted_rate;
    CHECK(fitted == doctest::Approx(slow_rate_at_alpha(m, c)).epsilon(1e-3));
    CHECK(fitted < previous);
    previous = fitted;
  }
}

TEST_CASE("nondegenerate traveling front decays at the saddle rates") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  FrontProfile nn =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0);

  CHECK(nn.kind == FrontCase::NondegenerateTraveling);
  CHECK(nn.u_minus == 1.0);
  CHECK(nn.u_plus == 0.5);
  CHECK(nn.phi[nn.phase_index] == 0.75);
  CHECK(nn.residual_max < 1e-9);
  CHECK(nn.phi_x[nn.phase_index] == doctest::Approx(-0.04973005).epsilon(1e-5));

  const std::vector<DecayReport> reports = verify_decay(nn, m);
  REQUIRE(reports.size() == 2);

  // Left tail: the orbit leaves the saddle at (1, 0) along its unstable
  // eigenvector, rate (sqrt(5) - 1) / 4 for b = 1, alpha = 1/2, c = 1.  The
  // predicted rate is the slow stable rate of the same point and disagrees.
  const DecayReport& left = reports[0];
  CHECK(left.law == DecayReport::Law::Exponential);
  CHECK(left.conclusive);
  CHECK(left.fitted_rate ==
        doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-3));
  CHECK(left.predicted_rate ==
        doctest::Approx((std::sqrt(5.0) + 1.0) / 4.0).epsilon(1e-6));

  const DecayReport& right = reports[1];
  CHECK(right.conclusive);
  CHECK(right.fitted_rate ==
        doctest::Approx(slow_rate_at_alpha(m, 1.0)).epsilon(1e-3));

  CHECK(coefficient_bound(nn, m) ==
        doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-4));
}

TEST_CASE("quarter-alpha models keep the same tail structure") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.25);

  FrontProfile nd = solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0);
  CHECK(nd.residual_max < 1e-8);
  std::vector<DecayReport> reports = verify_decay(nd, m);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].fitted_rate == doctest::Approx(0.25).epsilon(1e-3));
  // Slow rate at alpha = 1/4 is exactly 1/5: the discriminant is (7/8)^2.
  CHECK(reports[1].fitted_rate == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(reports[1].predicted_rate == doctest::Approx(3.0));

  FrontProfile nn =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0);
  CHECK(nn.residual_max < 1e-8);
  reports = verify_decay(nn, m);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].fitted_rate ==
        doctest::Approx((std::sqrt(7.0) - 1.0) / 4.0).epsilon(1e-3));
  CHECK(reports[0].predicted_rate ==
        doctest::Approx((std::sqrt(7.0) + 1.0) / 4.0).epsilon(1e-6));
  CHECK(reports[1].fitted_rate == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("fine grids do not inflate the residual") {
  ModelSpec balanced = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  GridConfig fine;
  fine.n = 17001;
  FrontProfile sd = solve_stationary_front(balanced, false, fine);
  CHECK(sd.residual_max < 1e-9);

  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  fine.n = 20001;
  FrontProfile nd =
      solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0, fine);
  CHECK(nd.residual_max < 1e-8);
}

TEST_CASE("stronger degenerate diffusion shifts the balanced profile") {
  ModelSpec m = ModelSpec::shigesada_cubic(2.0, stationary_alpha(2.0));
  CHECK(stationary_alpha(2.0) == doctest::Approx(8.0 / 13.0).epsilon(1e-15));

  FrontProfile sd = solve_stationary_front(m, false);
  CHECK(sd.residual_max < 1e-9);
  CHECK(sd.phi_x[sd.phase_index] == doctest::Approx(-0.14051188).epsilon(1e-6));
  CHECK(sd.L_plus == doctest::Approx(4.1070).epsilon(1e-3));
}

TEST_CASE("phase anchor only translates the profile") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile sd = solve_stationary_front(m, false);

  GridConfig shifted;
  shifted.phase_value = 0.45;
  FrontProfile sp = solve_stationary_front(m, false, shifted);
  CHECK(sp.phi[sp.phase_index] == 0.45);
  CHECK(sp.x[sp.phase_index] == 0.0);

  // Locate phi = 0.45 on the default profile by bisection on the cubic
  // interpolant, then compare the shifted profile against the translated
  // default one.
  double lo = sd.x[sd.phase_index];
  double hi = sd.x.back();
  for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (sample_phi(sd, mid) > 0.45) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x0 = 0.5 * (lo + hi);

  double worst = 0.0;
  for (std::size_t i = 0; i < sp.x.size(); i += 13) {
    const double xq = sp.x[i] + x0;
    if (xq < sd.x.front() || xq > sd.x.back()) continue;
    worst = std::max(worst, std::abs(sample_phi(sd, xq) - sp.phi[i]));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("inputs outside the front hypotheses are rejected") {
  ModelSpec unbalanced = ModelSpec::shigesada_cubic(1.0, 0.5);
  CHECK(thrown_message_contains(
      [&] { solve_stationary_front(unbalanced, false); }, "balanced"));
  CHECK_THROWS_AS(solve_stationary_front(unbalanced, false),
                  std::invalid_argument);

  // threshold_speed for b = 1, alpha = 1/2 is sqrt(3)/2; c = 1/2 sits below.
  CHECK(thrown_message_contains(
      [&] {
        solve_traveling_front(unbalanced, FrontCase::DegenerateTraveling, 0.5);
      },
      "threshold"));
  CHECK_THROWS_AS(
      solve_traveling_front(unbalanced, FrontCase::NondegenerateTraveling, 0.5),
      std::invalid_argument);

  CHECK_THROWS_AS(
      solve_traveling_front(unbalanced, FrontCase::StationaryDecreasing, 1.0),
      std::invalid_argument);

  GridConfig bad_phase;
  bad_phase.phase_value = 1e-8;
  CHECK_THROWS_AS(
      solve_traveling_front(unbalanced, FrontCase::DegenerateTraveling, 1.0,
                            bad_phase),
      std::invalid_argument);

  ModelSpec balanced = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile sd = solve_stationary_front(balanced, false);
  CHECK_THROWS_AS(sample_phi(sd, sd.x.back() + 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_phi(sd, sd.x.front() - 1.0), std::invalid_argument);

  FrontProfile fake;
  fake.x = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  fake.phi = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3};
  fake.phi_x = {-0.1, -0.1, 0.0, -0.1, -0.1, -0.1, -0.1};
  fake.phi_xx.assign(7, 0.0);
  CHECK_THROWS_AS(coefficient_bound(fake, balanced), std::runtime_error);
}
