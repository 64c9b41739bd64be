#pragma once

/// Adaptive ODE integration with dense output, event location, and streaming
/// of solution values at caller-chosen sample points.  Wraps Boost.Odeint's
/// Dormand-Prince 5(4) dense-output stepper so the rest of the library can
/// say "integrate this field until that happens" in one call.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nagfront {

using OdeState = std::vector<double>;

/// Right-hand side callback: rhs(y, dydx, x) fills dydx with y'(x).
using OdeRhs = std::function<void(const OdeState&, OdeState&, double)>;

/// Scalar event g(y, x).  Integration stops at the first x where g crosses
/// zero in the requested direction: -1 from positive to non-positive, +1
/// from negative to non-negative, 0 either way.  A zero value at the
/// starting point does not trigger.
struct OdeEvent {
  std::function<double(const OdeState&, double)> value;
  int direction = 0;
};

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  /// Starting step guess; 0 picks (x_limit - x0) / 1024.
  double initial_step = 0.0;
  std::size_t max_steps = 2000000;
  /// Optional strictly increasing coordinate s(y, x) along the trajectory.
  /// When set, sample_points are values of s instead of the independent
  /// variable, and must be sorted ascending; each is located by a root
  /// solve on the dense interpolant.  Useful when the natural output
  /// coordinate is a state component (say, arclength or recovered position).
  std::function<double(const OdeState&, double)> sample_coordinate;
};

struct IntegrationResult {
  /// Accepted step endpoints, starting with (x0, y0).
  std::vector<double> step_x;
  std::vector<OdeState> step_y;
  /// States interpolated at the requested sample points, in request order.
  /// Sample points beyond an event cut are dropped, so this may be shorter
  /// than the request.
  std::vector<OdeState> samples;
  bool event_hit = false;
  double x_event = 0.0;
  OdeState y_event;
  /// True when integration ran to x_limit without an event firing.
  bool reached_limit = false;
  std::size_t n_steps = 0;
};

/// Integrates y' = rhs(y, x) from x0 toward x_limit (either direction).
/// Stops where the event fires if one is given, otherwise exactly at
/// x_limit.  Sample points must be sorted in the direction of integration
/// and lie within the span; values at them come from the stepper's dense
/// interpolant, so sampling does not constrain step sizes.  Events are
/// detected by a sign change of g across an accepted step and located with
/// a bracketing root solve on the interpolant.
IntegrationResult integrate_dense(const OdeRhs& rhs, OdeState y0, double x0,
                                  double x_limit, const OdeOptions& opts = {},
                                  const OdeEvent* event = nullptr,
                                  std::span<const double> sample_points = {});

}  // namespace nagfront
