#include "nagfront/fronts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nagfront/numerics.hpp"
#include "nagfront/ode.hpp"

namespace nagfront {

namespace {

constexpr double kStationaryResidualTol = 1e-8;
constexpr double kTravelingResidualTol = 1e-7;
constexpr double kSpeedMargin = 1e-6;
constexpr double kBalanceTol = 1e-10;
constexpr double kDegenerateDiffusivityFloor = 1e-12;

void require_valid_model(const ModelSpec& model) {
  const ValidationReport report = validate_hypotheses(model);
  if (report.all_passed) return;
  for (const auto& check : report.checks) {
    if (!check.passed) {
      throw std::invalid_argument("model violates hypothesis: " + check.name);
    }
  }
}

double pick_phase(const GridConfig& config, double u_minus, double u_plus) {
  if (std::isnan(config.phase_value)) return 0.5 * (u_minus + u_plus);
  return config.phase_value;
}

OdeOptions integrator_options(const GridConfig& config) {
  OdeOptions opts;
  opts.rel_tol = config.ode_rel_tol;
  opts.abs_tol = config.ode_abs_tol;
  return opts;
}

/// Shared assembly: attaches curvature, runs the structural checks, and
/// certifies the profile-equation residual.
FrontProfile finalize_profile(FrontCase kind, const ModelSpec& model, double c,
                              double u_minus, double u_plus, double phase,
                              std::vector<double> x, std::vector<double> phi,
                              std::vector<double> phi_x, double residual_tol) {
  FrontProfile front;
  front.kind = kind;
  front.c = c;
  front.u_minus = u_minus;
  front.u_plus = u_plus;
  front.phase_value = phase;
  front.x = std::move(x);
  front.phi = std::move(phi);
  front.phi_x = std::move(phi_x);

  const std::size_t n = front.x.size();
  if (front.phi.size() != n || front.phi_x.size() != n || n < 7) {
    throw std::logic_error("front assembly produced inconsistent arrays");
  }

  const auto zero_it = std::find(front.x.begin(), front.x.end(), 0.0);
  if (zero_it == front.x.end()) {
    throw std::logic_error("front grid does not contain x = 0");
  }
  front.phase_index = static_cast<std::size_t>(zero_it - front.x.begin());
  front.L_minus = -front.x.front();
  front.L_plus = front.x.back();

  const double sgn = is_increasing(kind) ? 1.0 : -1.0;
  for (double v : front.phi_x) {
    if (!(sgn * v > 0.0)) {
      throw std::runtime_error("front lost strict monotonicity on the grid");
    }
  }
  const double lo = std::min(u_minus, u_plus);
  const double hi = std::max(u_minus, u_plus);
  for (double value : front.phi) {
    if (!(value > lo && value < hi)) {
      throw std::runtime_error("front leaves the open range between end states");
    }
  }

  front.phi_xx.resize(n);
  std::vector<std::size_t> fd_nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const double diffusivity = model.D(front.phi[i]);
    if (diffusivity > kDegenerateDiffusivityFloor) {
      const double vx = front.phi_x[i];
      front.phi_xx[i] = -(c * vx + model.f(front.phi[i]) +
                          model.D_prime(front.phi[i]) * vx * vx) /
                        diffusivity;
    } else {
      fd_nodes.push_back(i);
    }
  }
  if (!fd_nodes.empty()) {
    const std::vector<double> second = fd_derivative(front.x, front.phi, 2);
    for (std::size_t i : fd_nodes) front.phi_xx[i] = second[i];
  }

  const std::vector<double> residual = profile_residual(front, model);
  double interior_max = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    interior_max = std::max(interior_max, std::abs(residual[i]));
  }
  front.residual_max = interior_max;
  if (interior_max > residual_tol) {
    char message[96];
    std::snprintf(message, sizeof(message),
                  "front residual %.3e exceeds tolerance %.3e", interior_max,
                  residual_tol);
    throw std::runtime_error(message);
  }
  return front;
}

// Antiderivative of (D f)(1 - s) with zero constant term, so that
// Q(1 - phi) equals potential(1) - potential(phi).  Near phi = 1 the direct
// Horner form of the potential cancels catastrophically (the value sits at
// a double root while the partial sums stay order one), and the lost digits
// would come back as white noise that the residual stencils amplify by the
// inverse grid spacing; Q builds the same value from terms that all scale
// with 1 - phi.
Polynomial reflected_potential(const ModelSpec& model) {
  const Polynomial product =
      model.diffusion_polynomial() * model.reaction_polynomial();
  const auto& p = product.coefficients();
  std::vector<double> q = {0.0};
  for (std::size_t k = p.size(); k-- > 0;) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i] += q[i];
      next[i + 1] -= q[i];
    }
    next[0] += p[k];
    q = std::move(next);
  }
  return Polynomial(std::move(q)).antiderivative();
}

}  // namespace

std::string to_code(FrontCase kind) {
  switch (kind) {
    case FrontCase::StationaryIncreasing: return "sN-inc";
    case FrontCase::StationaryDecreasing: return "sN-dec";
    case FrontCase::DegenerateTraveling: return "Nd";
    case FrontCase::NondegenerateTraveling: return "Nn";
  }
  throw std::logic_error("unknown front case");
}

FrontCase front_case_from_code(std::string_view code) {
  if (code == "sN-inc") return FrontCase::StationaryIncreasing;
  if (code == "sN-dec") return FrontCase::StationaryDecreasing;
  if (code == "Nd") return FrontCase::DegenerateTraveling;
  if (code == "Nn") return FrontCase::NondegenerateTraveling;
  throw std::invalid_argument("unknown front case code: " + std::string(code));
}

bool is_stationary(FrontCase kind) {
  return kind == FrontCase::StationaryIncreasing ||
         kind == FrontCase::StationaryDecreasing;
}

bool is_increasing(FrontCase kind) {
  return kind == FrontCase::StationaryIncreasing ||
         kind == FrontCase::DegenerateTraveling;
}

FrontProfile solve_stationary_front(const ModelSpec& model, bool increasing,
                                    const GridConfig& config) {
  require_valid_model(model);
  if (std::abs(model.potential(1.0)) > kBalanceTol) {
    throw std::invalid_argument(
        "stationary front requires a balanced potential: |potential(1)| <= "
        "1e-10 (choose alpha with stationary_alpha)");
  }
  const double delta = config.boundary_cutoff;
  const double phase = pick_phase(config, 0.0, 1.0);
  if (!(phase > delta && phase < 1.0 - delta)) {
    throw std::invalid_argument("phase value outside the profile range");
  }
  const double sgn = increasing ? 1.0 : -1.0;

  // The well depth -potential(phi), with the balance treated as exact: the
  // reflected form near phi = 1 keeps the evaluation relative-accurate at
  // the double root (the two branches agree up to the vetted |potential(1)|).
  const Polynomial reflected = reflected_potential(model);
  auto well_at = [&model, &reflected](double phi) {
    return phi > 0.5 ? reflected(1.0 - phi) : -model.potential(phi);
  };

  const OdeRhs rhs = [&model, &well_at, sgn](const OdeState& y, OdeState& dy,
                                             double) {
    const double phi = std::clamp(y[0], 0.0, 1.0);
    if (phi <= 0.0 || phi >= 1.0) {
      dy[0] = 0.0;
      return;
    }
    const double well = well_at(phi);
    if (well <= 0.0) {
      if (well < -1e-12) {
        throw std::runtime_error(
            "stationary level set lost monotonicity: potential became "
            "positive in the interior");
      }
      dy[0] = 0.0;
      return;
    }
    dy[0] = sgn * std::sqrt(2.0 * well) / model.D(phi);
  };

  const OdeOptions opts = integrator_options(config);

  // The decreasing front falls to the degenerate layer phi = delta on the
  // right and climbs to 1 - delta on the left; the increasing front mirrors
  // this.
  OdeEvent right_stop, left_stop;
  if (increasing) {
    right_stop.value = [=](const OdeState& y, double) {
      return y[0] - (1.0 - delta);
    };
    right_stop.direction = +1;
    left_stop.value = [=](const OdeState& y, double) { return y[0] - delta; };
    left_stop.direction = -1;
  } else {
    right_stop.value = [=](const OdeState& y, double) { return y[0] - delta; };
    right_stop.direction = -1;
    left_stop.value = [=](const OdeState& y, double) {
      return y[0] - (1.0 - delta);
    };
    left_stop.direction = +1;
  }

  auto right = integrate_dense(rhs, {phase}, 0.0, 1e4, opts, &right_stop);
  if (!right.event_hit) {
    throw std::runtime_error("stationary front never reached the right layer");
  }
  auto left = integrate_dense(rhs, {phase}, 0.0, -1e4, opts, &left_stop);
  if (!left.event_hit) {
    throw std::runtime_error("stationary front never reached the left layer");
  }

  std::vector<double> grid = uniform_grid_through_zero(
      left.x_event, right.x_event, config.n);
  // The end nodes are rebuilt from the spacing and can round an ulp past the
  // event locations, which the resampling spans treat as out of range.
  if (grid.front() < left.x_event) grid.front() = left.x_event;
  if (grid.back() > right.x_event) grid.back() = right.x_event;
  const auto mid =
      std::find(grid.begin(), grid.end(), 0.0) - grid.begin();

  std::vector<double> right_nodes(grid.begin() + mid + 1, grid.end());
  std::vector<double> left_nodes(grid.begin(),
                                 grid.begin() + mid);  // ascending, negative
  std::reverse(left_nodes.begin(), left_nodes.end());

  auto right_run = integrate_dense(rhs, {phase}, 0.0, right.x_event, opts,
                                   nullptr, right_nodes);
  auto left_run = integrate_dense(rhs, {phase}, 0.0, left.x_event, opts,
                                  nullptr, left_nodes);
  if (right_run.samples.size() != right_nodes.size() ||
      left_run.samples.size() != left_nodes.size()) {
    throw std::logic_error("stationary resampling missed grid nodes");
  }

  std::vector<double> phi(grid.size());
  phi[static_cast<std::size_t>(mid)] = phase;
  for (std::size_t k = 0; k < right_nodes.size(); ++k) {
    phi[static_cast<std::size_t>(mid) + 1 + k] = right_run.samples[k][0];
  }
  for (std::size_t k = 0; k < left_nodes.size(); ++k) {
    phi[static_cast<std::size_t>(mid) - 1 - k] = left_run.samples[k][0];
  }

  std::vector<double> phi_x(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double well = std::max(well_at(std::clamp(phi[i], 0.0, 1.0)), 0.0);
    phi_x[i] = sgn * std::sqrt(2.0 * well) / model.D(phi[i]);
  }

  const double tol = config.residual_tol > 0.0 ? config.residual_tol
                                               : kStationaryResidualTol;
  const FrontCase kind = increasing ? FrontCase::StationaryIncreasing
                                    : FrontCase::StationaryDecreasing;
  const double u_minus = increasing ? 0.0 : 1.0;
  const double u_plus = increasing ? 1.0 : 0.0;
  return finalize_profile(kind, model, 0.0, u_minus, u_plus, phase,
                          std::move(grid), std::move(phi), std::move(phi_x),
                          tol);
}

FrontProfile solve_traveling_front(const ModelSpec& model, FrontCase kind,
                                   double c, const GridConfig& config) {
  if (is_stationary(kind)) {
    throw std::invalid_argument(
        "solve_traveling_front handles only the traveling cases");
  }
  require_valid_model(model);
  const double c_threshold = threshold_speed(model);
  if (!(c >= c_threshold + kSpeedMargin)) {
    throw std::invalid_argument(
        "no monotone front: speed " + std::to_string(c) +
        " is not above the threshold " + std::to_string(c_threshold) +
        " by the required margin");
  }

  const double alpha = model.alpha();
  const double delta = config.boundary_cutoff;
  const double offset = config.launch_offset;
  const OdeOptions base_opts = integrator_options(config);
  const double tol = config.residual_tol > 0.0 ? config.residual_tol
                                               : kTravelingResidualTol;

  if (kind == FrontCase::NondegenerateTraveling) {
    const double u_minus = 1.0;
    const double u_plus = alpha;
    const double phase = pick_phase(config, u_minus, u_plus);
    if (!(phase > alpha + delta && phase < 1.0 - offset)) {
      throw std::invalid_argument("phase value outside the profile range");
    }

    // Unstable eigenvalue of the saddle (1, 0).
    const double disc = c * c - 4.0 * model.D(1.0) * model.f_prime(1.0);
    const double nu = (-c + std::sqrt(disc)) / (2.0 * model.D(1.0));
    const OdeState start = {1.0 - offset, -offset * nu};

    const OdeRhs rhs = [&model, c](const OdeState& y, OdeState& dy, double) {
      const double phi = y[0];
      const double v = y[1];
      dy[0] = v;
      dy[1] = -(c * v + model.f(phi) + model.D_prime(phi) * v * v) /
              model.D(phi);
    };

    OdeEvent arrive;
    arrive.value = [=](const OdeState& y, double) {
      return y[0] - (alpha + delta);
    };
    arrive.direction = -1;
    auto span = integrate_dense(rhs, start, 0.0, 1e4, base_opts, &arrive);
    if (!span.event_hit) {
      throw std::runtime_error("non-degenerate front never reached the "
                               "alpha layer");
    }
    for (const auto& y : span.step_y) {
      if (y[0] < alpha - 2.0 * delta || y[0] > 1.0 + 2.0 * delta) {
        throw std::runtime_error("trajectory escaped the connection corridor");
      }
    }

    OdeEvent at_phase;
    at_phase.value = [=](const OdeState& y, double) { return y[0] - phase; };
    at_phase.direction = -1;
    auto mid = integrate_dense(rhs, start, 0.0, span.x_event, base_opts,
                               &at_phase);
    if (!mid.event_hit) {
      throw std::runtime_error("phase value was not crossed by the profile");
    }
    const double x_mid = mid.x_event;

    std::vector<double> grid = uniform_grid_through_zero(
        -x_mid, span.x_event - x_mid, config.n);
    std::vector<double> raw_nodes(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) raw_nodes[i] = grid[i] + x_mid;
    if (raw_nodes.front() < 0.0) raw_nodes.front() = 0.0;
    if (raw_nodes.back() > span.x_event) raw_nodes.back() = span.x_event;

    auto sampled = integrate_dense(rhs, start, 0.0, span.x_event, base_opts,
                                   nullptr, raw_nodes);
    if (sampled.samples.size() != grid.size()) {
      throw std::logic_error("non-degenerate resampling missed grid nodes");
    }
    std::vector<double> phi(grid.size()), phi_x(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      phi[i] = sampled.samples[i][0];
      phi_x[i] = sampled.samples[i][1];
    }
    phi[static_cast<std::size_t>(
        std::find(grid.begin(), grid.end(), 0.0) - grid.begin())] = phase;
    return finalize_profile(kind, model, c, u_minus, u_plus, phase,
                            std::move(grid), std::move(phi), std::move(phi_x),
                            tol);
  }

  // Degenerate traveling case.  Every explicit parameterization of this
  // connection pays the full transverse-relaxation work near the degenerate
  // rest point: the attraction rate per unit phi is c / (D(phi) v) ~ phi^-2
  // and its integral along the orbit does not depend on the marching
  // variable, so a launch from a tiny amplitude stalls no matter how the
  // system is written.  Below a switch amplitude phi_s the tail is therefore
  // written down in closed form from the quadratic center-manifold jet
  //   phi_x = h(phi) = h1 phi + h2 phi^2,
  //   h1 = -f'(0)/c,  h2 = -(f''(0) c^2 + 4 D'(0) f'(0)^2) / (2 c^3),
  // whose profile residual is O(phi^3) and sits far below the acceptance
  // tolerance for phi_s <= 1e-3.  The regular stretch [phi_s, alpha - delta]
  // is integrated with phi as the independent variable:
  //   dv/dphi = -(c v + D'(phi) v^2 + f(phi)) / (D(phi) v),
  //   dx/dphi = 1 / v.
  // State layout: y = {v, x, phi copy}; the copy rides along so coordinate
  // samples report where in phi they landed.
  const double u_minus = 0.0;
  const double u_plus = alpha;
  const double phase = pick_phase(config, u_minus, u_plus);
  if (!(phase > delta && phase < alpha - delta)) {
    throw std::invalid_argument("phase value outside the profile range");
  }

  const double fp0 = model.f_prime(0.0);
  const double fpp0 =
      model.reaction_polynomial().derivative().derivative()(0.0);
  const double dp0 = model.D_prime(0.0);
  const double h1 = -fp0 / c;
  const double h2 = -(fpp0 * c * c + 4.0 * dp0 * fp0 * fp0) / (2.0 * c * c * c);
  const double ratio = h2 / h1;

  // Keep the quadratic term a small correction at the switch point.
  double phi_s = std::min(1e-3, 0.5 * phase);
  if (std::abs(ratio) * phi_s > 0.25) phi_s = 0.25 / std::abs(ratio);
  if (!(phi_s > delta)) {
    throw std::invalid_argument(
        "boundary cutoff leaves no room below the switch amplitude");
  }

  const OdeState start = {h1 * phi_s + h2 * phi_s * phi_s, 0.0, phi_s};

  const OdeRhs rhs = [&model, c](const OdeState& y, OdeState& dy, double phi) {
    const double v = y[0];
    dy[0] = -(c * v + model.D_prime(phi) * v * v + model.f(phi)) /
            (model.D(phi) * v);
    dy[1] = 1.0 / v;
    dy[2] = 1.0;
    // A trial step can poke past the rest point at phi = alpha where the
    // numerator and v vanish together; turn a 0/0 into a rejected step
    // instead of a NaN state the error control cannot see.
    if (std::isnan(dy[0])) dy[0] = 1e300;
  };

  const std::vector<double> phase_node = {phase};
  auto span = integrate_dense(rhs, start, phi_s, alpha - delta, base_opts,
                              nullptr, phase_node);
  if (!span.reached_limit || span.samples.size() != 1) {
    throw std::runtime_error("degenerate front never reached the alpha layer");
  }
  for (const auto& y : span.step_y) {
    if (!(y[0] > 0.0)) {
      throw std::runtime_error(
          "monotone connection lost before the alpha layer");
    }
  }
  const double x_mid = span.samples[0][1];
  const double x_span = span.step_y.back()[1];

  // Closed-form jet tail for x <= 0: with w = 1/phi the jet equation turns
  // linear, w(x) = (1/phi_s + h2/h1) exp(-h1 x) - h2/h1, and the tail ends
  // where the jet reaches the boundary cutoff.
  const double w_s = 1.0 / phi_s + ratio;
  const double x_tail = -std::log((1.0 / delta + ratio) / w_s) / h1;
  auto jet_phi = [&](double x) { return 1.0 / (w_s * std::exp(-h1 * x) - ratio); };

  std::vector<double> grid =
      uniform_grid_through_zero(x_tail - x_mid, x_span - x_mid, config.n);
  std::vector<double> raw_nodes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) raw_nodes[i] = grid[i] + x_mid;
  if (raw_nodes.back() > x_span) raw_nodes.back() = x_span;

  const std::size_t first_pos = static_cast<std::size_t>(
      std::upper_bound(raw_nodes.begin(), raw_nodes.end(), 0.0) -
      raw_nodes.begin());
  const std::vector<double> numeric_nodes(raw_nodes.begin() + first_pos,
                                          raw_nodes.end());

  OdeOptions sampling = base_opts;
  sampling.sample_coordinate = [](const OdeState& y, double) { return y[1]; };
  auto sampled = integrate_dense(rhs, start, phi_s, alpha - delta, sampling,
                                 nullptr, numeric_nodes);
  if (sampled.samples.size() != numeric_nodes.size()) {
    throw std::logic_error("degenerate resampling missed grid nodes");
  }
  std::vector<double> phi(grid.size()), phi_x(grid.size());
  for (std::size_t i = 0; i < first_pos; ++i) {
    phi[i] = jet_phi(raw_nodes[i]);
    phi_x[i] = h1 * phi[i] + h2 * phi[i] * phi[i];
  }
  for (std::size_t i = first_pos; i < grid.size(); ++i) {
    phi[i] = sampled.samples[i - first_pos][2];
    phi_x[i] = sampled.samples[i - first_pos][0];
  }
  phi[static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 0.0) -
                               grid.begin())] = phase;
  return finalize_profile(kind, model, c, u_minus, u_plus, phase,
                          std::move(grid), std::move(phi), std::move(phi_x),
                          tol);
}

std::vector<double> profile_residual(const FrontProfile& front,
                                     const ModelSpec& model) {
  const std::size_t n = front.x.size();
  std::vector<double> flux(n);
  for (std::size_t i = 0; i < n; ++i) {
    flux[i] = model.D(front.phi[i]) * front.phi_x[i];
  }
  std::vector<double> divergence = fd_derivative(front.x, flux, 1);
  for (std::size_t i = 0; i < n; ++i) {
    divergence[i] += front.c * front.phi_x[i] + model.f(front.phi[i]);
  }
  return divergence;
}

std::vector<DecayReport> verify_decay(const FrontProfile& front,
                                      const ModelSpec& model) {
  const double alpha = model.alpha();
  const double c = front.c;

  auto rate_at = [&](double u) {
    const double disc = c * c - 4.0 * model.D(u) * model.f_prime(u);
    return (c + std::sqrt(disc)) / (2.0 * model.D(u));
  };

  std::vector<DecayReport> reports;
  for (int side = 0; side < 2; ++side) {
    DecayReport report;
    report.side = side == 0 ? DecayReport::Side::MinusInfinity
                            : DecayReport::Side::PlusInfinity;
    const double limit = side == 0 ? front.u_minus : front.u_plus;

    const bool degenerate_side = is_stationary(front.kind) && limit == 0.0;
    report.law = degenerate_side ? DecayReport::Law::Algebraic
                                 : DecayReport::Law::Exponential;

    switch (front.kind) {
      case FrontCase::StationaryIncreasing:
      case FrontCase::StationaryDecreasing:
        report.predicted_rate =
            degenerate_side
                ? -2.0
                : std::sqrt(-model.f_prime(1.0) / model.D(1.0));
        break;
      case FrontCase::DegenerateTraveling:
        report.predicted_rate = side == 0 ? std::abs(model.f_prime(0.0)) / c
                                          : rate_at(alpha);
        break;
      case FrontCase::NondegenerateTraveling:
        report.predicted_rate = side == 0 ? rate_at(1.0) : rate_at(alpha);
        break;
    }

    // Window between 70% and 95% of this side's half-width.
    const double half_width = side == 0 ? front.L_minus : front.L_plus;
    double w_lo = 0.70 * half_width;
    double w_hi = 0.95 * half_width;
    if (side == 0) {
      report.window_lo = -w_hi;
      report.window_hi = -w_lo;
    } else {
      report.window_lo = w_lo;
      report.window_hi = w_hi;
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < front.x.size(); ++i) {
      const double x = front.x[i];
      if (x < report.window_lo || x > report.window_hi) continue;
      const double gap = std::abs(front.phi[i] - limit);
      if (gap <= 0.0) continue;
      if (report.law == DecayReport::Law::Algebraic) {
        xs.push_back(std::log(std::abs(x)));
      } else {
        xs.push_back(x);
      }
      ys.push_back(std::log(gap));
    }
    report.window_points = xs.size();
    report.conclusive = xs.size() >= 20;
    if (report.conclusive) {
      const LineFit fit = fit_line(xs, ys);
      report.fitted_rate = report.law == DecayReport::Law::Algebraic
                               ? fit.slope
                               : std::abs(fit.slope);
      report.relative_error =
          std::abs(report.fitted_rate - report.predicted_rate) /
          std::abs(report.predicted_rate);
    }
    reports.push_back(report);
  }
  return reports;
}

double coefficient_bound(const FrontProfile& front, const ModelSpec& model) {
  double bound = 0.0;
  for (std::size_t i = 0; i < front.x.size(); ++i) {
    if (front.phi_x[i] == 0.0) {
      throw std::runtime_error(
          "coefficient bound undefined: phi_x vanishes on the grid");
    }
    const double value = std::abs(model.D(front.phi[i]) * front.phi_xx[i] /
                                  front.phi_x[i]);
    bound = std::max(bound, value);
  }
  return bound;
}

double sample_phi(const FrontProfile& front, double x) {
  const auto& xs = front.x;
  if (x < xs.front() || x > xs.back()) {
    throw std::invalid_argument("sample point outside the front grid");
  }
  const auto upper = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t k = upper == xs.begin()
                      ? 0
                      : static_cast<std::size_t>(upper - xs.begin()) - 1;
  // Four-point window clamped to the grid.
  std::size_t w0 = k >= 1 ? k - 1 : 0;
  if (w0 + 4 > xs.size()) w0 = xs.size() - 4;
  double value = 0.0;
  for (std::size_t i = w0; i < w0 + 4; ++i) {
    double basis = 1.0;
    for (std::size_t j = w0; j < w0 + 4; ++j) {
      if (j == i) continue;
      basis *= (x - xs[j]) / (xs[i] - xs[j]);
    }
    value += basis * front.phi[i];
  }
  return value;
}

}  // namespace nagfront
