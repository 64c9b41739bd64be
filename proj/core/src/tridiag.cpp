#include "nagfront/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace nagfront {

namespace {

void check_shape(const Tridiagonal& T) {
  if (T.diag.empty()) throw std::invalid_argument("tridiagonal: empty matrix");
  if (T.lower.size() + 1 != T.diag.size() ||
      T.upper.size() + 1 != T.diag.size()) {
    throw std::invalid_argument("tridiagonal: band lengths must be size - 1");
  }
}

double vector_norm(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> tridiagonal_apply(const Tridiagonal& T,
                                      std::span<const double> u) {
  check_shape(T);
  const std::size_t m = T.size();
  if (u.size() != m) throw std::invalid_argument("tridiagonal: size mismatch");
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = T.diag[i] * u[i];
    if (i > 0) s += T.lower[i - 1] * u[i - 1];
    if (i + 1 < m) s += T.upper[i] * u[i + 1];
    out[i] = s;
  }
  return out;
}

std::vector<double> tridiagonal_solve_shifted(const Tridiagonal& T,
                                              double shift,
                                              std::span<const double> rhs) {
  check_shape(T);
  const std::size_t m = T.size();
  if (rhs.size() != m) throw std::invalid_argument("tridiagonal: size mismatch");

  // Elimination with row pivoting fills one extra superdiagonal.
  std::vector<double> d(m), e(m > 1 ? m - 1 : 0), f(m > 2 ? m - 2 : 0, 0.0);
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < m; ++i) d[i] = T.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < m; ++i) e[i] = T.upper[i];

  std::vector<double> sub(m > 1 ? m - 1 : 0);
  for (std::size_t i = 0; i + 1 < m; ++i) sub[i] = T.lower[i];

  for (std::size_t i = 0; i + 1 < m; ++i) {
    double pivot = d[i];
    double below = sub[i];
    if (std::abs(below) > std::abs(pivot)) {
      std::swap(d[i], sub[i]);
      pivot = d[i];
      below = sub[i];
      std::swap(e[i], d[i + 1]);
      if (i + 2 < m) std::swap(f[i], e[i + 1]);
      std::swap(b[i], b[i + 1]);
    }
    if (pivot == 0.0) {
      throw std::runtime_error("tridiagonal: singular shifted matrix");
    }
    const double mult = below / pivot;
    d[i + 1] -= mult * e[i];
    if (i + 2 < m) e[i + 1] -= mult * f[i];
    b[i + 1] -= mult * b[i];
  }
  if (d[m - 1] == 0.0) {
    // Exact singularity at the last pivot: nudge so inverse iteration can
    // still extract the null direction.
    d[m - 1] = std::numeric_limits<double>::min();
  }

  std::vector<double> u(m);
  for (std::size_t ii = m; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < m) s -= e[ii] * u[ii + 1];
    if (ii + 2 < m) s -= f[ii] * u[ii + 2];
    u[ii] = s / d[ii];
  }
  return u;
}

bool tridiagonal_symmetrizable(const Tridiagonal& T) {
  check_shape(T);
  for (std::size_t i = 0; i + 1 < T.size(); ++i) {
    if (!(T.upper[i] * T.lower[i] > 0.0)) return false;
  }
  return true;
}

SymmetrizedTridiagonal tridiagonal_symmetrize(const Tridiagonal& T) {
  if (!tridiagonal_symmetrizable(T)) {
    throw std::invalid_argument(
        "tridiagonal: off-diagonal products are not all positive");
  }
  const std::size_t m = T.size();
  SymmetrizedTridiagonal S;
  S.diag = T.diag;
  S.off.resize(m - 1);
  S.log_scale.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    S.off[i] = std::copysign(std::sqrt(T.upper[i] * T.lower[i]), T.upper[i]);
    S.log_scale[i + 1] =
        S.log_scale[i] +
        0.5 * (std::log(std::abs(T.upper[i])) - std::log(std::abs(T.lower[i])));
  }
  return S;
}

std::size_t sturm_count_below(std::span<const double> diag,
                              std::span<const double> off, double x) {
  const std::size_t m = diag.size();
  std::size_t count = 0;
  double pivot = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < m; ++i) {
    double value = diag[i] - x;
    if (i > 0) value -= off[i - 1] * off[i - 1] / pivot;
    if (value == 0.0) value = -tiny;
    if (value < 0.0) ++count;
    pivot = value;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(std::span<const double> diag,
                                            std::span<const double> off) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t m = diag.size();
  for (std::size_t i = 0; i < m; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < m) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> symmetric_eigenvalues_in(std::span<const double> diag,
                                             std::span<const double> off,
                                             double lo, double hi,
                                             std::size_t k) {
  std::vector<double> out;
  if (k == 0 || diag.empty() || !(lo < hi)) return out;

  const auto [glo, ghi] = gershgorin_bounds(diag, off);
  lo = std::max(lo, glo);
  hi = std::min(hi, std::nextafter(ghi, std::numeric_limits<double>::max()));
  if (!(lo < hi)) return out;

  const std::size_t below_hi = sturm_count_below(diag, off, hi);
  const std::size_t below_lo = sturm_count_below(diag, off, lo);
  if (below_hi <= below_lo) return out;

  std::size_t want = std::min<std::size_t>(k, below_hi - below_lo);
  // Descending: the j-th returned eigenvalue has ascending index
  // below_hi - 1 - j.
  for (std::size_t j = 0; j < want; ++j) {
    const std::size_t index = below_hi - 1 - j;
    double a = lo, b = hi;
    // Bisect until the bracket is at rounding resolution.
    for (int it = 0; it < 120 && a < b; ++it) {
      const double mid = a + 0.5 * (b - a);
      if (mid <= a || mid >= b) break;
      if (sturm_count_below(diag, off, mid) > index) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.push_back(a + 0.5 * (b - a));
  }
  return out;
}

InverseIterationResult tridiagonal_inverse_iteration(const Tridiagonal& T,
                                                     double lambda,
                                                     int max_sweeps) {
  check_shape(T);
  const std::size_t m = T.size();
  InverseIterationResult result;
  result.lambda = lambda;

  std::mt19937 rng(1234567u);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> v(m);
  for (double& x : v) x = unit(rng);
  double norm = vector_norm(v);
  for (double& x : v) x /= norm;

  double previous_residual = std::numeric_limits<double>::infinity();
  std::vector<double> best = v;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    std::vector<double> w;
    try {
      w = tridiagonal_solve_shifted(T, result.lambda, v);
    } catch (const std::runtime_error&) {
      break;
    }
    norm = vector_norm(w);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    for (double& x : w) x /= norm;

    const auto Tw = tridiagonal_apply(T, w);
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < m; ++i) rayleigh += w[i] * Tw[i];
    double residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = Tw[i] - rayleigh * w[i];
      residual += r * r;
    }
    residual = std::sqrt(residual);

    v = w;
    if (residual < previous_residual) {
      previous_residual = residual;
      best = w;
      result.lambda = rayleigh;
    }
    if (residual <= 1e-13 * std::max(1.0, std::abs(rayleigh))) {
      result.converged = true;
      break;
    }
  }
  if (previous_residual <
      1e-8 * std::max(1.0, std::abs(result.lambda))) {
    result.converged = true;
  }
  result.vector = std::move(best);
  return result;
}

}  // namespace nagfront
