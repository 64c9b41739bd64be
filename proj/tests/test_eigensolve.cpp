#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "nagfront/eigensolve.hpp"
#include "nagfront/fronts.hpp"
#include "nagfront/model.hpp"
#include "nagfront/numerics.hpp"
#include "nagfront/spectrum.hpp"
#include "nagfront/tridiag.hpp"

using nagfront::build_operator;
using nagfront::compute_spectrum;
using nagfront::consistent_splitting_bound;
using nagfront::DiscretizedOperator;
using nagfront::fd_derivative;
using nagfront::FrontCase;
using nagfront::FrontProfile;
using nagfront::GridConfig;
using nagfront::liouville_transform;
using nagfront::LiouvilleOperator;
using nagfront::ModelSpec;
using nagfront::regularization_sweep;
using nagfront::RegularizationSweep;
using nagfront::select_weight;
using nagfront::solve_stationary_front;
using nagfront::solve_traveling_front;
using nagfront::SpectrumWindow;
using nagfront::stationary_alpha;
using nagfront::sturm_check;
using nagfront::SturmReport;
using nagfront::translation_eigenpair_check;
using nagfront::Tridiagonal;
using nagfront::tridiagonal_apply;
using nagfront::tridiagonal_symmetrize;

namespace {

/// Synthetic profile on a uniform grid, for operators whose coefficients do
/// not depend on a computed front (constant-diffusion models).
FrontProfile synthetic_front(std::size_t n, double half_width) {
  FrontProfile f;
  f.kind = FrontCase::StationaryIncreasing;
  f.c = 0.0;
  f.u_minus = 0.0;
  f.u_plus = 1.0;
  f.phase_value = 0.5;
  f.phase_index = n / 2;
  f.L_minus = half_width;
  f.L_plus = half_width;
  f.x.resize(n);
  f.phi.resize(n);
  f.phi_x.resize(n);
  f.phi_xx.resize(n);
  const double h = 2.0 * half_width / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -half_width + h * static_cast<double>(i);
    const double t = std::tanh(x);
    f.x[i] = x;
    f.phi[i] = 0.5 * (1.0 + t);
    f.phi_x[i] = 0.5 * (1.0 - t * t);
    f.phi_xx[i] = -t * (1.0 - t * t);
  }
  f.x[f.phase_index] = 0.0;
  return f;
}

}  // namespace

TEST_CASE("hand-built Dirichlet Laplacian reproduces the sine ladder") {
  const std::size_t n = 501;
  const double h = M_PI / static_cast<double>(n - 1);

  DiscretizedOperator op;
  op.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) op.x[i] = h * static_cast<double>(i);
  op.b2.assign(n, 1.0);
  op.b2x.assign(n, 0.0);
  op.b2xx.assign(n, 0.0);
  op.b1.assign(n, 0.0);
  op.b0.assign(n, 0.0);
  op.phase_index = n / 2;
  op.interior.diag.assign(n - 2, -2.0 / (h * h));
  op.interior.lower.assign(n - 3, 1.0 / (h * h));
  op.interior.upper.assign(n - 3, 1.0 / (h * h));

  auto pairs = compute_spectrum(op, 4);
  REQUIRE(pairs.size() == 4);
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto& p = pairs[k - 1];
    const double s = std::sin(0.5 * static_cast<double>(k) * h);
    const double exact_discrete = -4.0 / (h * h) * s * s;
    CHECK(p.lambda.imag() == 0.0);
    CHECK(p.lambda.real() ==
          doctest::Approx(exact_discrete).epsilon(1e-9));
    // the discrete eigenvalue sits within the classical h^2 bound of -k^2
    const double kk = static_cast<double>(k * k);
    CHECK(std::abs(p.lambda.real() + kk) <= kk * kk * h * h / 12.0 * 1.01);
    CHECK(p.certified);
    CHECK(p.residual <= 1e-8);
    CHECK(p.sign_changes == static_cast<int>(k) - 1);
  }
  // sine modes carry O(1) mass near the ends; the boundary flag must fire
  CHECK(pairs[0].boundary_mass > 0.01);
  CHECK(pairs[0].flagged);

  SturmReport report = sturm_check(pairs);
  CHECK(report.consistent);
  CHECK(report.skipped_nonreal == 0);
}

TEST_CASE("viscosity shifts the assembled coefficients affinely") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  GridConfig grid;
  grid.n = 801;
  FrontProfile f =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, grid);
  const double a = 0.55;
  const double eps = 1e-3;
  auto base = build_operator(f, m, a);
  auto shifted = build_operator(f, m, a, eps);
  for (std::size_t i = 0; i < base.b2.size(); i += 97) {
    CHECK(shifted.b2[i] - base.b2[i] == doctest::Approx(eps).epsilon(1e-12));
    CHECK(shifted.b1[i] - base.b1[i] ==
          doctest::Approx(-2.0 * a * eps).epsilon(1e-10));
    CHECK(shifted.b0[i] - base.b0[i] ==
          doctest::Approx(a * a * eps).epsilon(1e-10));
    CHECK(shifted.b2x[i] == base.b2x[i]);
    CHECK(shifted.b2xx[i] == base.b2xx[i]);
  }
}

TEST_CASE("operator assembly rejects tiny grids and negative viscosity") {
  ModelSpec m = ModelSpec::general_polynomial({1.0}, {0.0}, 0.5);
  FrontProfile small = synthetic_front(150, 3.0);
  CHECK_THROWS_AS(build_operator(small, m, 0.0), std::invalid_argument);

  FrontProfile ok = synthetic_front(301, 3.0);
  CHECK_THROWS_AS(build_operator(ok, m, 0.0, -1e-9), std::invalid_argument);
  CHECK_NOTHROW(build_operator(ok, m, 0.0));
}

TEST_CASE("degenerate traveling coefficients reach their tail limits") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  GridConfig grid;
  grid.n = 801;
  FrontProfile f =
      solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0, grid);
  auto plan = select_weight(m, FrontCase::DegenerateTraveling, 1.0);
  auto op = build_operator(f, m, plan.a);

  // b1 -> c - 2 a D(alpha) = 1 - 0.75 and b0 -> a^2 D(alpha) - a c + f'(alpha)
  CHECK(op.b1.back() == doctest::Approx(0.25).epsilon(5e-6));
  CHECK(op.b0.back() == doctest::Approx(-0.0625).epsilon(5e-6));
  CHECK(op.b2.back() == doctest::Approx(0.75).epsilon(1e-5));
  // the same number is the splitting bound for this plan, exactly rational
  CHECK(consistent_splitting_bound(m, FrontCase::DegenerateTraveling, 1.0,
                                   plan.a, 0.0) ==
        doctest::Approx(-0.0625).epsilon(1e-12));
}

TEST_CASE("constant-coefficient normal form is computed in closed form") {
  ModelSpec m = ModelSpec::general_polynomial({4.0}, {0.0}, 0.5);
  const double k = 0.7;
  FrontProfile f = synthetic_front(301, 1.5);
  f.c = k;
  auto op = build_operator(f, m, 0.0);
  for (double v : op.b2) CHECK(v == 4.0);
  for (std::size_t i = 0; i < op.b1.size(); i += 50)
    CHECK(op.b1[i] == doctest::Approx(k).epsilon(1e-14));

  LiouvilleOperator liou = liouville_transform(op);
  for (std::size_t i = 0; i < liou.xi.size(); i += 50) {
    CHECK(liou.xi[i] == doctest::Approx(0.5 * op.x[i]).epsilon(1e-12));
    CHECK(liou.b1t[i] == doctest::Approx(0.5 * k).epsilon(1e-12));
    CHECK(std::abs(liou.b0t[i]) <= 1e-12);
    CHECK(liou.quarter_power[i] ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> u(op.x.size());
  for (auto& v : u) v = uni(rng);
  auto round = liou.from_sturmian(liou.to_sturmian(u));
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(round[i] == doctest::Approx(u[i]).epsilon(1e-14));
}

TEST_CASE("normal form requires uniform ellipticity") {
  ModelSpec m = ModelSpec::general_polynomial({1e-12}, {0.0}, 0.5);
  FrontProfile f = synthetic_front(301, 3.0);
  auto op = build_operator(f, m, 0.0);
  CHECK_THROWS_AS(liouville_transform(op), std::invalid_argument);
}

TEST_CASE("bistable traveling ladder: values, flags, and oscillation") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  FrontProfile f =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, {});
  auto plan = select_weight(m, FrontCase::NondegenerateTraveling, 1.0);
  auto op = build_operator(f, m, plan.a);

  SpectrumWindow win;
  win.min_re = -0.30;
  auto pairs = compute_spectrum(op, 6, win);
  REQUIRE(pairs.size() == 6);

  const double expected[6] = {-0.0609809936245, -0.0919343507378,
                              -0.11511173419,   -0.150020745707,
                              -0.195182396157,  -0.249512505423};
  const bool flags[6] = {false, false, true, true, false, false};
  for (int j = 0; j < 6; ++j) {
    CHECK(pairs[j].lambda.imag() == 0.0);
    CHECK(pairs[j].lambda.real() ==
          doctest::Approx(expected[j]).epsilon(1e-7));
    CHECK(pairs[j].certified);
    CHECK(pairs[j].residual <= 1e-8);
    CHECK(pairs[j].flagged == flags[j]);
  }

  SturmReport report = sturm_check(pairs);
  CHECK(report.consistent);
  CHECK(report.skipped_nonreal == 0);
  CHECK(report.min_gap == doctest::Approx(0.0232).epsilon(0.05));

  // every returned eigenvalue sits above the consistent-splitting edge
  const double edge = consistent_splitting_bound(
      m, FrontCase::NondegenerateTraveling, 1.0, plan.a, 0.0);
  CHECK(edge == doctest::Approx(-0.076494363).epsilon(1e-7));
  CHECK(pairs[0].lambda.real() > edge);
}

TEST_CASE("normal-form residual of a computed eigenpair is small") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  FrontProfile f =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, {});
  auto plan = select_weight(m, FrontCase::NondegenerateTraveling, 1.0);
  auto op = build_operator(f, m, plan.a);
  SpectrumWindow win;
  win.min_re = -0.30;
  auto pairs = compute_spectrum(op, 1, win);
  REQUIRE(pairs.size() == 1);

  LiouvilleOperator liou = liouville_transform(op);
  std::vector<double> u(pairs[0].u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = pairs[0].u[i].real();
  auto v = liou.to_sturmian(u);
  auto v1 = fd_derivative(liou.xi, v, 1, 7);
  auto v2 = fd_derivative(liou.xi, v, 2, 7);
  double num = 0.0, den = 0.0;
  const std::size_t skip = v.size() / 20;
  for (std::size_t i = skip; i + skip < v.size(); ++i) {
    const double r = v2[i] + liou.b1t[i] * v1[i] + liou.b0t[i] * v[i] -
                     pairs[0].lambda.real() * v[i];
    num += r * r;
    den += v[i] * v[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-5);
}

TEST_CASE("symmetrizer makes the interior block self-adjoint") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  FrontProfile f =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, {});
  auto plan = select_weight(m, FrontCase::NondegenerateTraveling, 1.0);
  auto op = build_operator(f, m, plan.a);
  auto sym = tridiagonal_symmetrize(op.interior);

  const std::size_t ni = op.interior.size();
  const double base = sym.log_scale[op.phase_index - 1];
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(ni), w(ni);
    for (std::size_t i = 0; i < ni; ++i) {
      u[i] = uni(rng);
      w[i] = uni(rng);
    }
    auto Tu = tridiagonal_apply(op.interior, u);
    auto Tw = tridiagonal_apply(op.interior, w);
    double s1 = 0.0, s2 = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ni; ++i) {
      const double om = std::exp(2.0 * (sym.log_scale[i] - base));
      s1 += om * Tu[i] * w[i];
      s2 += om * u[i] * Tw[i];
      scale += std::abs(om * Tu[i] * w[i]);
    }
    CHECK(std::abs(s1 - s2) / scale <= 1e-8);
  }
}

TEST_CASE("translation eigenpair check across the three weighted cases") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  ModelSpec ms = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));

  FrontProfile s = solve_stationary_front(ms, true, {});
  CHECK(translation_eigenpair_check(s, ms, 0.0) <= 1e-7);

  GridConfig gd;
  gd.n = 1201;
  FrontProfile nd =
      solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0, gd);
  auto pd = select_weight(m, FrontCase::DegenerateTraveling, 1.0);
  CHECK(translation_eigenpair_check(nd, m, pd.a) <= 1e-6);

  GridConfig gn;
  gn.ode_rel_tol = 1e-14;
  gn.ode_abs_tol = 1e-14;
  FrontProfile nn =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, gn);
  auto pn = select_weight(m, FrontCase::NondegenerateTraveling, 1.0);
  CHECK(translation_eigenpair_check(nn, m, pn.a) <= 1e-6);
}

TEST_CASE("leading eigenvalue is stable under refinement and extension") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  auto plan = select_weight(m, FrontCase::NondegenerateTraveling, 1.0);
  SpectrumWindow win;
  win.min_re = -0.30;

  GridConfig coarse;
  coarse.n = 2001;
  FrontProfile f2 =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, coarse);
  auto p2 = compute_spectrum(build_operator(f2, m, plan.a), 1, win);
  FrontProfile f4 =
      solve_traveling_front(m, FrontCase::NondegenerateTraveling, 1.0, {});
  auto p4 = compute_spectrum(build_operator(f4, m, plan.a), 1, win);
  CHECK(std::abs(p4[0].lambda.real() - p2[0].lambda.real()) <= 1e-5);

  // same grid size, wider domain: eigenvalues above the splitting edge stay
  ModelSpec ms = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  SpectrumWindow wins;
  wins.min_re = -0.45;
  FrontProfile sb = solve_stationary_front(ms, true, {});
  auto base = compute_spectrum(build_operator(sb, ms, 0.0), 2, wins);
  GridConfig wide;
  wide.boundary_cutoff = 2e-7;
  FrontProfile se = solve_stationary_front(ms, true, wide);
  auto ext = compute_spectrum(build_operator(se, ms, 0.0), 2, wins);
  CHECK(std::abs(base[0].lambda.real() - ext[0].lambda.real()) <= 1e-5);
  CHECK(std::abs(base[1].lambda.real() - ext[1].lambda.real()) <= 1e-4);
}

TEST_CASE("stationary ladder: zero mode and first excited state") {
  ModelSpec ms = ModelSpec::shigesada_cubic(1.0, stationary_alpha(1.0));
  FrontProfile f = solve_stationary_front(ms, true, {});
  auto op = build_operator(f, ms, 0.0);
  SpectrumWindow win;
  win.min_re = -0.45;
  auto pairs = compute_spectrum(op, 2, win);
  REQUIRE(pairs.size() == 2);

  // discrete copy of the translation zero mode: near zero, boundary-heavy
  CHECK(std::abs(pairs[0].lambda.real()) <= 1e-5);
  CHECK(pairs[0].flagged);
  CHECK(pairs[0].sign_changes == 0);
  CHECK(pairs[1].lambda.real() ==
        doctest::Approx(-0.323484403256).epsilon(1e-6));
  CHECK(pairs[1].sign_changes == 1);
  for (const auto& p : pairs) {
    CHECK(p.certified);
    CHECK(p.residual <= 1e-8);
  }
}

TEST_CASE("viscosity sweep drifts vanish linearly") {
  ModelSpec m = ModelSpec::shigesada_cubic(1.0, 0.5);
  GridConfig grid;
  grid.n = 801;
  FrontProfile f =
      solve_traveling_front(m, FrontCase::DegenerateTraveling, 1.0, grid);
  auto plan = select_weight(m, FrontCase::DegenerateTraveling, 1.0);

  const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4, 0.0};
  RegularizationSweep sweep = regularization_sweep(f, m, plan.a, eps, 1);
  REQUIRE(sweep.tracks.size() == 1);
  const auto& track = sweep.tracks[0];
  REQUIRE(track.drift.size() == 5);
  CHECK_FALSE(track.ambiguous);
  CHECK(track.drift[0] == doctest::Approx(0.03869).epsilon(1e-3));
  CHECK(track.drift[1] == doctest::Approx(0.004333).epsilon(1e-3));
  CHECK(track.drift[2] == doctest::Approx(0.00043856).epsilon(1e-3));
  CHECK(track.drift[3] == doctest::Approx(4.3909e-05).epsilon(1e-3));
  CHECK(track.drift[4] == 0.0);
  for (int i = 0; i + 2 < 5; ++i) CHECK(track.drift[i] > track.drift[i + 1]);
  CHECK(track.fitted_order == doctest::Approx(0.98).epsilon(0.05));

  CHECK_THROWS_AS(
      regularization_sweep(f, m, plan.a, std::vector<double>{-1e-3}, 1),
      std::invalid_argument);
}
