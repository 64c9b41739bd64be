#include "nagfront/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nagfront {

std::vector<double> fd_weights(std::span<const double> nodes, double x0,
                               int order) {
  // B. Fornberg, "Generation of finite difference formulas on arbitrarily
  // spaced grids", Math. Comp. 51 (1988).
  const int n = static_cast<int>(nodes.size()) - 1;
  const int m = order;
  if (n < m) throw std::invalid_argument("fd_weights: too few nodes");
  std::vector<std::vector<double>> delta(
      static_cast<std::size_t>(n + 1),
      std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  delta[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] -
                        nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          delta[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              c1 *
              (k * delta[static_cast<std::size_t>(i - 1)]
                        [static_cast<std::size_t>(k - 1)] -
               c5 * delta[static_cast<std::size_t>(i - 1)]
                         [static_cast<std::size_t>(k)]) /
              c2;
        }
        delta[static_cast<std::size_t>(i)][0] =
            -c1 * c5 * delta[static_cast<std::size_t>(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        delta[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            (c4 * delta[static_cast<std::size_t>(j)]
                       [static_cast<std::size_t>(k)] -
             k * delta[static_cast<std::size_t>(j)]
                      [static_cast<std::size_t>(k - 1)]) /
            c3;
      }
      delta[static_cast<std::size_t>(j)][0] =
          c4 * delta[static_cast<std::size_t>(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    w[i] = delta[i][static_cast<std::size_t>(m)];
  }
  return w;
}

std::vector<double> fd_derivative(std::span<const double> x,
                                  std::span<const double> u, int order,
                                  int stencil_size) {
  const std::size_t n = x.size();
  if (u.size() != n) throw std::invalid_argument("fd_derivative: size mismatch");
  const std::size_t s = static_cast<std::size_t>(stencil_size);
  if (n < s) throw std::invalid_argument("fd_derivative: grid shorter than stencil");
  std::vector<double> result(n, 0.0);

  // Detect a uniform grid so the three distinct stencil shapes can be reused.
  const double h0 = x[1] - x[0];
  bool uniform = true;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs((x[i + 1] - x[i]) - h0) > 1e-12 * std::abs(h0)) {
      uniform = false;
      break;
    }
  }

  auto window_start = [&](std::size_t i) {
    const std::size_t half = s / 2;
    if (i < half) return std::size_t{0};
    if (i + (s - half) > n) return n - s;
    return i - half;
  };

  if (uniform) {
    std::vector<std::vector<double>> cache(s);
    std::vector<double> offsets(s);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t w0 = window_start(i);
      const std::size_t pos = i - w0;
      if (cache[pos].empty()) {
        for (std::size_t k = 0; k < s; ++k) {
          offsets[k] = (static_cast<double>(k) - static_cast<double>(pos)) * h0;
        }
        cache[pos] = fd_weights(offsets, 0.0, order);
      }
      double acc = 0.0;
      for (std::size_t k = 0; k < s; ++k) acc += cache[pos][k] * u[w0 + k];
      result[i] = acc;
    }
  } else {
    std::vector<double> nodes(s);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t w0 = window_start(i);
      for (std::size_t k = 0; k < s; ++k) nodes[k] = x[w0 + k];
      const std::vector<double> w = fd_weights(nodes, x[i], order);
      double acc = 0.0;
      for (std::size_t k = 0; k < s; ++k) acc += w[k] * u[w0 + k];
      result[i] = acc;
    }
  }
  return result;
}

double trapezoid(std::span<const double> x, std::span<const double> u) {
  if (x.size() != u.size()) throw std::invalid_argument("trapezoid: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    acc += 0.5 * (x[i + 1] - x[i]) * (u[i + 1] + u[i]);
  }
  return acc;
}

std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                         std::span<const double> u,
                                         std::size_t i0) {
  if (x.size() != u.size()) {
    throw std::invalid_argument("cumulative_trapezoid: size mismatch");
  }
  if (i0 >= x.size()) {
    throw std::invalid_argument("cumulative_trapezoid: anchor out of range");
  }
  std::vector<double> acc(x.size(), 0.0);
  for (std::size_t i = i0; i + 1 < x.size(); ++i) {
    acc[i + 1] = acc[i] + 0.5 * (x[i + 1] - x[i]) * (u[i + 1] + u[i]);
  }
  for (std::size_t i = i0; i > 0; --i) {
    acc[i - 1] = acc[i] - 0.5 * (x[i] - x[i - 1]) * (u[i] + u[i - 1]);
  }
  return acc;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  return fit;
}

std::vector<double> uniform_grid_through_zero(double lo, double hi,
                                              std::size_t n) {
  if (!(lo < 0.0 && hi > 0.0)) {
    throw std::invalid_argument("uniform_grid_through_zero: need lo < 0 < hi");
  }
  if (n < 3) throw std::invalid_argument("uniform_grid_through_zero: n < 3");
  const double h_raw = (hi - lo) / static_cast<double>(n - 1);
  // Shrink symmetrically so that 0 is the m-th node with spacing h <= h_raw.
  const auto m = static_cast<std::size_t>(std::floor(-lo / h_raw));
  const std::size_t rest = n - 1 - m;
  const double h = std::min(m > 0 ? -lo / static_cast<double>(m)
                                  : std::numeric_limits<double>::infinity(),
                            rest > 0 ? hi / static_cast<double>(rest)
                                     : std::numeric_limits<double>::infinity());
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (static_cast<double>(i) - static_cast<double>(m)) * h;
  }
  x[m] = 0.0;
  return x;
}

int sign_changes(std::span<const double> u, std::size_t i_lo, std::size_t i_hi,
                 double drop_tol) {
  if (i_hi >= u.size() || i_lo > i_hi) {
    throw std::invalid_argument("sign_changes: bad index range");
  }
  double umax = 0.0;
  for (std::size_t i = i_lo; i <= i_hi; ++i) umax = std::max(umax, std::abs(u[i]));
  const double floor_value = drop_tol * umax;
  int count = 0;
  int last_sign = 0;
  for (std::size_t i = i_lo; i <= i_hi; ++i) {
    if (std::abs(u[i]) <= floor_value) continue;
    const int s = u[i] > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

}  // namespace nagfront
