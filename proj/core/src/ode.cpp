#include "nagfront/ode.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nagfront {

namespace odeint = boost::numeric::odeint;

IntegrationResult integrate_dense(const OdeRhs& rhs, OdeState y0, double x0,
                                  double x_limit, const OdeOptions& opts,
                                  const OdeEvent* event,
                                  std::span<const double> sample_points) {
  if (x_limit == x0) throw std::invalid_argument("integrate_dense: empty span");
  if (y0.empty()) throw std::invalid_argument("integrate_dense: empty state");
  const double dir = x_limit > x0 ? 1.0 : -1.0;
  auto reached = [dir](double a, double b) { return dir * (a - b) >= 0.0; };

  const bool custom_coord = static_cast<bool>(opts.sample_coordinate);
  for (std::size_t i = 0; i < sample_points.size(); ++i) {
    const double p = sample_points[i];
    if (custom_coord) {
      if (i > 0 && p < sample_points[i - 1]) {
        throw std::invalid_argument(
            "integrate_dense: coordinate samples must ascend");
      }
      continue;
    }
    if (!reached(p, x0) || !reached(x_limit, p)) {
      throw std::invalid_argument("integrate_dense: sample point outside span");
    }
    if (i > 0 && !reached(p, sample_points[i - 1])) {
      throw std::invalid_argument("integrate_dense: sample points out of order");
    }
  }

  const double dt =
      opts.initial_step != 0.0 ? opts.initial_step : (x_limit - x0) / 1024.0;
  if (dir * dt <= 0.0) {
    throw std::invalid_argument("integrate_dense: initial step against direction");
  }

  auto stepper = odeint::make_dense_output(
      opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<OdeState>());
  stepper.initialize(y0, x0, dt);

  IntegrationResult out;
  out.step_x.push_back(x0);
  out.step_y.push_back(y0);

  std::size_t si = 0;
  OdeState tmp(y0.size());

  if (custom_coord) {
    const double s0 = opts.sample_coordinate(y0, x0);
    while (si < sample_points.size() && sample_points[si] <= s0) {
      if (sample_points[si] < s0) {
        throw std::invalid_argument(
            "integrate_dense: coordinate sample precedes the start");
      }
      out.samples.push_back(y0);
      ++si;
    }
  } else {
    while (si < sample_points.size() && sample_points[si] == x0) {
      out.samples.push_back(y0);
      ++si;
    }
  }

  // Emits every pending sample located inside the step interval whose far
  // endpoint is (t_hi, state s_hi); for the plain time coordinate s_hi is
  // just t_hi.
  auto emit_samples = [&](double t_lo, double t_hi) {
    if (!custom_coord) {
      while (si < sample_points.size() && reached(t_hi, sample_points[si])) {
        stepper.calc_state(sample_points[si], tmp);
        out.samples.push_back(tmp);
        ++si;
      }
      return;
    }
    stepper.calc_state(t_hi, tmp);
    const double s_hi = opts.sample_coordinate(tmp, t_hi);
    while (si < sample_points.size() && sample_points[si] <= s_hi) {
      const double s_k = sample_points[si];
      double t_k = t_hi;
      if (s_k < s_hi) {
        auto h_of = [&](double t) {
          stepper.calc_state(t, tmp);
          return opts.sample_coordinate(tmp, t) - s_k;
        };
        const double lo = std::min(t_lo, t_hi);
        const double hi = std::max(t_lo, t_hi);
        const double g_lo = h_of(lo);
        const double g_hi = h_of(hi);
        if (g_lo == 0.0) {
          t_k = lo;
        } else if (g_hi == 0.0) {
          t_k = hi;
        } else if (g_lo * g_hi > 0.0) {
          // The coordinate already passed s_k before this interval; the
          // closest representable location is the near endpoint.
          t_k = g_lo > 0.0 ? lo : hi;
        } else {
          std::uintmax_t iters = 128;
          const auto bracket = boost::math::tools::toms748_solve(
              h_of, lo, hi, g_lo, g_hi,
              boost::math::tools::eps_tolerance<double>(48), iters);
          t_k = 0.5 * (bracket.first + bracket.second);
        }
      }
      stepper.calc_state(t_k, tmp);
      out.samples.push_back(tmp);
      ++si;
    }
  };

  double g_prev = event ? event->value(y0, x0) : 0.0;
  auto crossed = [event](double a, double b) {
    if (event->direction < 0) return a > 0.0 && b <= 0.0;
    if (event->direction > 0) return a < 0.0 && b >= 0.0;
    return (a > 0.0 && b <= 0.0) || (a < 0.0 && b >= 0.0);
  };

  bool done = false;
  while (!done) {
    if (out.n_steps >= opts.max_steps) {
      throw std::runtime_error("integrate_dense: exceeded max_steps");
    }
    stepper.do_step(rhs);
    ++out.n_steps;
    const double t_start = stepper.previous_time();
    const double t1 = stepper.current_time();
    const double t_end = reached(t1, x_limit) ? x_limit : t1;

    if (event) {
      stepper.calc_state(t_end, tmp);
      const double g_end = event->value(tmp, t_end);
      if (crossed(g_prev, g_end)) {
        double t_hit = t_end;
        if (g_end != 0.0) {
          auto g_of = [&](double t) {
            stepper.calc_state(t, tmp);
            return event->value(tmp, t);
          };
          const double lo = std::min(t_start, t_end);
          const double hi = std::max(t_start, t_end);
          const double g_lo = lo == t_start ? g_prev : g_end;
          const double g_hi = hi == t_start ? g_prev : g_end;
          std::uintmax_t iters = 128;
          const auto bracket = boost::math::tools::toms748_solve(
              g_of, lo, hi, g_lo, g_hi,
              boost::math::tools::eps_tolerance<double>(48), iters);
          t_hit = 0.5 * (bracket.first + bracket.second);
        }
        stepper.calc_state(t_hit, tmp);
        out.event_hit = true;
        out.x_event = t_hit;
        out.y_event = tmp;
        emit_samples(t_start, t_hit);
        out.step_x.push_back(t_hit);
        out.step_y.push_back(out.y_event);
        done = true;
        continue;
      }
      g_prev = g_end;
    }

    emit_samples(t_start, t_end);

    if (reached(t1, x_limit)) {
      stepper.calc_state(x_limit, tmp);
      out.step_x.push_back(x_limit);
      out.step_y.push_back(tmp);
      out.reached_limit = true;
      done = true;
    } else {
      out.step_x.push_back(t1);
      out.step_y.push_back(stepper.current_state());
    }
  }
  return out;
}

}  // namespace nagfront
