#include "nagfront/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace nagfront {

namespace {

constexpr double kOmegaMargin = 1e-12;
constexpr double kThresholdResidualTol = 1e-12;

double regularized_diffusivity(const ModelSpec& model, double u, double eps) {
  return model.D(u) + eps;
}

/// Real part of the k = 0 border at one end state, valid for degenerate
/// ends as well (the a^2 term carries the factor De(u)).
double border_top(const ModelSpec& model, double u, double c, double a,
                  double eps) {
  const double de = regularized_diffusivity(model, u, eps);
  return de * a * a - a * c + model.f_prime(u);
}

}  // namespace

double end_state(const ModelSpec& model, FrontCase kind, Side side) {
  switch (kind) {
    case FrontCase::StationaryIncreasing:
      return side == Side::Minus ? 0.0 : 1.0;
    case FrontCase::StationaryDecreasing:
      return side == Side::Minus ? 1.0 : 0.0;
    case FrontCase::DegenerateTraveling:
      return side == Side::Minus ? 0.0 : model.alpha();
    case FrontCase::NondegenerateTraveling:
      return side == Side::Minus ? 1.0 : model.alpha();
  }
  throw std::invalid_argument("unknown front case");
}

double weight_quadratic(const ModelSpec& model, double u, double c, double a) {
  return model.D(u) * a * a - c * a + model.f_prime(u);
}

std::pair<double, double> weight_roots(const ModelSpec& model, double u,
                                       double c) {
  const double d = model.D(u);
  if (!(d > 0.0)) {
    throw std::domain_error(
        "weight roots undefined at a degenerate end state (D(u) = 0)");
  }
  const double disc = c * c - 4.0 * d * model.f_prime(u);
  if (disc < 0.0) {
    throw std::domain_error(
        "weight roots are complex: speed below the minimal front speed at "
        "this end state");
  }
  const double root = std::sqrt(disc);
  return {(c - root) / (2.0 * d), (c + root) / (2.0 * d)};
}

std::vector<double> default_k_grid() {
  const std::size_t n = 2001;
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = -20.0 + 0.02 * static_cast<double>(i);
  }
  k[n / 2] = 0.0;
  return k;
}

BorderCurve fredholm_border(const ModelSpec& model, FrontCase kind, double c,
                            double a, double eps, Side side,
                            std::span<const double> k_grid) {
  if (eps < 0.0) {
    throw std::invalid_argument("regularization must be nonnegative");
  }
  const double u = end_state(model, kind, side);
  const double de = regularized_diffusivity(model, u, eps);
  const double fp = model.f_prime(u);

  BorderCurve curve;
  curve.side = side;
  curve.eps = eps;
  curve.a = a;
  curve.k.assign(k_grid.begin(), k_grid.end());
  curve.re_lambda.resize(curve.k.size());
  curve.im_lambda.resize(curve.k.size());
  for (std::size_t i = 0; i < curve.k.size(); ++i) {
    const double k = curve.k[i];
    curve.re_lambda[i] = de * (a * a - k * k) - a * c + fp;
    curve.im_lambda[i] = k * (c - 2.0 * a * de);
  }
  curve.max_re = border_top(model, u, c, a, eps);
  return curve;
}

double consistent_splitting_bound(const ModelSpec& model, FrontCase kind,
                                  double c, double a, double eps) {
  if (eps < 0.0) {
    throw std::invalid_argument("regularization must be nonnegative");
  }
  return std::max(
      border_top(model, end_state(model, kind, Side::Minus), c, a, eps),
      border_top(model, end_state(model, kind, Side::Plus), c, a, eps));
}

std::string to_string(StabilityClass kind) {
  switch (kind) {
    case StabilityClass::CaseI:
      return "case-i";
    case StabilityClass::CaseII:
      return "case-ii";
    case StabilityClass::Stationary:
      return "stationary";
  }
  throw std::invalid_argument("unknown stability class");
}

double weight_feasibility_indicator(const ModelSpec& model, double c) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("feasibility indicator needs a speed c > 0");
  }
  const double alpha = model.alpha();
  const double rho = model.D(alpha) / model.D(1.0);
  const double theta1_sq = -4.0 * model.D(1.0) * model.f_prime(1.0);
  const double theta_alpha_sq = 4.0 * model.D(alpha) * model.f_prime(alpha);
  // The second radicand vanishes at the minimal speed; clamp the rounding
  // residue so the indicator extends continuously to c = cbar.
  const double tail = std::max(0.0, 1.0 - theta_alpha_sq / (c * c));
  return rho * std::sqrt(1.0 + theta1_sq / (c * c)) + std::sqrt(tail);
}

Classification classify_and_threshold(const ModelSpec& model) {
  Classification result;
  const double alpha = model.alpha();
  const double cbar = threshold_speed(model);
  result.rho = model.D(alpha) / model.D(1.0);
  result.h_at_cbar = weight_feasibility_indicator(model, cbar);
  result.c_hat = std::numeric_limits<double>::quiet_NaN();

  bool case_one;
  if (model.family() == ModelFamily::ShigesadaCubic) {
    // Exact rational reduction of h(cbar) > 1 - rho for the canonical
    // family; no square roots, no tolerance.
    const double b = model.b();
    case_one = (alpha + b) * (1.0 + 2.0 * alpha) > 1.0 + b;
  } else {
    case_one = result.h_at_cbar > 1.0 - result.rho;
  }

  if (case_one) {
    result.kind = StabilityClass::CaseI;
    result.c0 = cbar;
    return result;
  }

  result.kind = StabilityClass::CaseII;
  const double target = 1.0 - result.rho;
  auto gap = [&](double c) {
    return weight_feasibility_indicator(model, c) - target;
  };

  if (std::abs(gap(cbar)) <= kThresholdResidualTol) {
    result.c_hat = cbar;
    result.c0 = cbar;
    return result;
  }

  // h tends to 1 + rho > 1 - rho at large c, so a geometric search from
  // cbar finds a sign change unless the dichotomy itself fails.
  double lo = cbar;
  double hi = cbar;
  bool bracketed = false;
  for (int step = 0; step < 60; ++step) {
    hi *= 2.0;
    if (gap(hi) > 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
  }
  if (!bracketed) {
    result.bracket_failed = true;
    result.c0 = cbar;
    return result;
  }

  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t max_iter = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(gap, lo, hi, tol, max_iter);
  const double c_hat = 0.5 * (bracket.first + bracket.second);
  if (std::abs(gap(c_hat)) > kThresholdResidualTol) {
    result.bracket_failed = true;
    result.c0 = cbar;
    return result;
  }
  result.c_hat = c_hat;
  result.c0 = c_hat;
  return result;
}

WeightPlan select_weight(const ModelSpec& model, FrontCase kind, double c) {
  WeightPlan plan;
  plan.kind = kind;
  plan.c = c;
  plan.nd_cap = std::numeric_limits<double>::quiet_NaN();

  const double alpha = model.alpha();

  if (is_stationary(kind)) {
    if (c != 0.0) {
      throw std::invalid_argument("stationary cases have speed zero");
    }
    plan.classification = StabilityClass::Stationary;
    plan.a = 0.0;
    plan.a_lo = 0.0;
    plan.a_hi = 0.0;
    plan.c0 = 0.0;
    plan.mu0 = -std::max(model.f_prime(0.0), model.f_prime(1.0));
    plan.mu0_exact = plan.mu0;
    plan.feasible = plan.mu0 > 0.0;
    if (!plan.feasible) {
      plan.infeasible_reason = "max{f'(0), f'(1)} >= 0";
    }
    return plan;
  }

  const Classification cls = classify_and_threshold(model);
  plan.classification = cls.kind;
  const double cbar = threshold_speed(model);

  if (kind == FrontCase::DegenerateTraveling) {
    plan.c0 = cbar;
    if (!(c > cbar)) {
      plan.infeasible_reason =
          "c <= minimal front speed: the weight roots at alpha are complex";
      return plan;
    }
    const auto [a1, a2] = weight_roots(model, alpha, c);
    const double cap = c / (2.0 * model.D(alpha));
    plan.a_lo = a1;
    plan.a_hi = cap;
    plan.nd_cap = cap;
    plan.a = 0.5 * (a1 + cap);
    plan.mu0 = -std::max(weight_quadratic(model, alpha, c, plan.a),
                         -plan.a * c + model.f_prime(0.0));
    plan.mu0_exact = plan.mu0;
    plan.feasible = true;
    (void)a2;
  } else if (kind == FrontCase::NondegenerateTraveling) {
    plan.c0 = cls.c0;
    if (cls.bracket_failed) {
      plan.infeasible_reason =
          "threshold bracket failed: h(c) = 1 - rho has no located root";
      return plan;
    }
    if (!(c > cbar)) {
      plan.infeasible_reason =
          "c <= minimal front speed: the weight roots at alpha are complex";
      return plan;
    }
    const auto [a1_alpha, a2_alpha] = weight_roots(model, alpha, c);
    const auto [a1_one, a2_one] = weight_roots(model, 1.0, c);
    (void)a1_one;
    const double m = std::min(a2_alpha, a2_one);
    plan.a_lo = a1_alpha;
    plan.a_hi = m;
    if (!(c > cls.c0) || !(a1_alpha < m)) {
      plan.infeasible_reason =
          "a1(alpha) >= min{a2(alpha), a2(1)}: no weight stabilizes both "
          "end states at this speed";
      return plan;
    }
    plan.a = 0.5 * (a1_alpha + m);
    const double p_one = weight_quadratic(model, 1.0, c, plan.a);
    const double p_alpha = weight_quadratic(model, alpha, c, plan.a);
    plan.mu0 = 0.5 * std::min(std::abs(p_one), std::abs(p_alpha));
    plan.mu0_exact = -std::max(p_one, p_alpha);
    plan.feasible = true;
  } else {
    throw std::invalid_argument("unknown front case");
  }

  if (plan.feasible &&
      !(consistent_splitting_bound(model, kind, c, plan.a, 0.0) < 0.0)) {
    throw std::logic_error(
        "weight selection inconsistency: chosen a does not push the "
        "splitting bound negative");
  }
  return plan;
}

AsymptoticSplitting asymptotic_matrix(const ModelSpec& model, FrontCase kind,
                                      double c, double a, double eps,
                                      std::complex<double> lambda, Side side) {
  const double u = end_state(model, kind, side);
  const double de = regularized_diffusivity(model, u, eps);
  if (!(de > 0.0)) {
    throw std::domain_error(
        "asymptotic matrix undefined on a degenerate end without "
        "regularization");
  }
  const double b1 = c - 2.0 * a * de;
  const double b0 = de * a * a - a * c + model.f_prime(u);

  AsymptoticSplitting result;
  result.matrix[0][0] = 0.0;
  result.matrix[0][1] = 1.0;
  result.matrix[1][0] = (lambda - b0) / de;
  result.matrix[1][1] = -b1 / de;

  const std::complex<double> disc =
      std::complex<double>(b1 * b1, 0.0) + 4.0 * de * (lambda - b0);
  const std::complex<double> root = std::sqrt(disc);
  result.mu1 = (-b1 - root) / (2.0 * de);
  result.mu2 = (-b1 + root) / (2.0 * de);
  if (result.mu1.real() > result.mu2.real()) std::swap(result.mu1, result.mu2);
  result.split = result.mu1.real() < 0.0 && result.mu2.real() > 0.0;
  return result;
}

DecayingMode decaying_mode(const ModelSpec& model, double c, double a,
                           std::complex<double> lambda) {
  const double bound = consistent_splitting_bound(
      model, FrontCase::DegenerateTraveling, c, a, 0.0);
  if (!(lambda.real() > bound + kOmegaMargin)) {
    throw std::domain_error(
        "lambda outside the region of consistent splitting");
  }
  const double d = model.D(model.alpha());
  const double p = weight_quadratic(model, model.alpha(), c, a);
  DecayingMode mode;
  mode.zeta = std::complex<double>((c / d - 2.0 * a) * (c / d - 2.0 * a), 0.0) +
              4.0 * (lambda - p) / d;
  mode.mu1 = a - c / (2.0 * d) - 0.5 * std::sqrt(mode.zeta);
  if (!(mode.mu1.real() < 0.0)) {
    throw std::logic_error(
        "decaying mode lost its negative real part inside the splitting "
        "region");
  }
  return mode;
}

}  // namespace nagfront
