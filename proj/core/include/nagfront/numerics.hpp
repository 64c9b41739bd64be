#pragma once

/// Small numerical building blocks shared across modules: finite-difference
/// weights on arbitrary nodes, trapezoidal quadrature, least-squares line
/// fits, and grid construction.

#include <cstddef>
#include <span>
#include <vector>

namespace nagfront {

/// Finite-difference weights for the m-th derivative at x0 from the given
/// nodes (Fornberg's recurrence).  Returns weights[i] such that
/// d^m u / dx^m (x0) ~= sum_i weights[i] * u(nodes[i]).
std::vector<double> fd_weights(std::span<const double> nodes, double x0,
                               int order);

/// Derivative of sampled data on an ascending grid using stencil_size-point
/// stencils (centered in the interior, one-sided near the ends).  With
/// stencil_size = 5 this is 4th-order accurate on smooth data.
std::vector<double> fd_derivative(std::span<const double> x,
                                  std::span<const double> u, int order,
                                  int stencil_size = 5);

double trapezoid(std::span<const double> x, std::span<const double> u);

/// Cumulative trapezoidal integral with result[i0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> u,
                                         std::size_t i0 = 0);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Ordinary least-squares line through (x[i], y[i]).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Uniform grid over approximately [lo, hi] that contains 0 as a node.
/// The spacing is (hi-lo)/(n-1); endpoints are nudged inward (never outward)
/// so that one node lands exactly on 0.
std::vector<double> uniform_grid_through_zero(double lo, double hi,
                                              std::size_t n);

/// Number of strict sign alternations of u restricted to indices [i_lo, i_hi],
/// ignoring entries with |u[i]| <= drop_tol * max|u|.
int sign_changes(std::span<const double> u, std::size_t i_lo, std::size_t i_hi,
                 double drop_tol = 1e-10);

}  // namespace nagfront
