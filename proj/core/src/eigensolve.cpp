#include "nagfront/eigensolve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nagfront/numerics.hpp"

namespace nagfront {

namespace {

struct OperatorCoefficients {
  std::vector<double> b2, b2x, b2xx, b1, b0;
};

OperatorCoefficients operator_coefficients(const FrontProfile& front,
                                           const ModelSpec& model, double a,
                                           double eps) {
  const std::size_t n = front.x.size();
  OperatorCoefficients co;
  co.b2.resize(n);
  co.b2x.resize(n);
  co.b2xx.resize(n);
  co.b1.resize(n);
  co.b0.resize(n);
  const double c = front.c;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = front.phi[i];
    const double px = front.phi_x[i];
    const double pxx = front.phi_xx[i];
    const double d = model.D(p) + eps;
    const double dx = model.D_prime(p) * px;
    const double dxx = model.D_second(p) * px * px + model.D_prime(p) * pxx;
    co.b2[i] = d;
    co.b2x[i] = dx;
    co.b2xx[i] = dxx;
    co.b1[i] = 2.0 * dx + c - 2.0 * a * d;
    co.b0[i] = a * a * d - 2.0 * a * dx - a * c + dxx + model.f_prime(p);
  }
  return co;
}

/// Conservative interior rows of b2 u'' + (advection + db2) u' + b0 u where
/// the diffusion part is grouped as (b2 u')' and advection = b1 - d/dx b2.
Tridiagonal assemble_second_order(std::span<const double> x,
                                  std::span<const double> b2,
                                  std::span<const double> advection,
                                  std::span<const double> b0) {
  const std::size_t n = x.size();
  const std::size_t m = n - 2;
  Tridiagonal T;
  T.diag.resize(m);
  T.lower.resize(m - 1);
  T.upper.resize(m - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t j = i - 1;
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    const double hbar = 0.5 * (hm + hp);
    const double bp = 0.5 * (b2[i] + b2[i + 1]);
    const double bm = 0.5 * (b2[i - 1] + b2[i]);
    const double r = advection[i];
    const double wm = -hp / (hm * (hm + hp));
    const double w0 = (hp - hm) / (hm * hp);
    const double wp = hm / (hp * (hm + hp));
    T.diag[j] = -bp / (hp * hbar) - bm / (hm * hbar) + r * w0 + b0[i];
    if (j > 0) T.lower[j - 1] = bm / (hm * hbar) + r * wm;
    if (j + 1 < m) T.upper[j] = bp / (hp * hbar) + r * wp;
  }
  return T;
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = 0.5 * (x[i + 1] - x[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

bool lambda_is_real(std::complex<double> lambda) {
  return std::abs(lambda.imag()) <= 1e-9 * std::max(1.0, std::abs(lambda.real()));
}

double interior_residual(const Tridiagonal& T,
                         std::span<const std::complex<double>> u,
                         std::complex<double> lambda) {
  const std::size_t m = T.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::complex<double> s = T.diag[i] * u[i];
    if (i > 0) s += T.lower[i - 1] * u[i - 1];
    if (i + 1 < m) s += T.upper[i] * u[i + 1];
    s -= lambda * u[i];
    num += std::norm(s);
    den += std::norm(u[i]);
  }
  return std::sqrt(num / den);
}

/// Normalization, boundary-mass flag, and sign-change count; expects u on
/// the full grid with zero boundary entries and residual already set.
void finalize_pair(EigenPair& pair, std::span<const double> x,
                   std::span<const double> w, std::size_t phase_index) {
  const std::size_t n = x.size();
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm2 += w[i] * std::norm(pair.u[i]);
  const double norm = std::sqrt(norm2);
  for (auto& v : pair.u) v /= norm;

  std::size_t anchor = phase_index;
  if (std::abs(pair.u[anchor]) < 1e-14) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(pair.u[i]) > best) {
        best = std::abs(pair.u[i]);
        anchor = i;
      }
    }
  }
  const std::complex<double> pivot = pair.u[anchor];
  if (std::abs(pivot) > 0.0) {
    const std::complex<double> rotation = std::conj(pivot) / std::abs(pivot);
    for (auto& v : pair.u) v *= rotation;
  }

  const double length = x.back() - x.front();
  const double left_edge = x.front() + 0.1 * length;
  const double right_edge = x.back() - 0.1 * length;
  double edge_mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= left_edge || x[i] >= right_edge) {
      edge_mass += w[i] * std::norm(pair.u[i]);
    }
  }
  pair.boundary_mass = edge_mass;
  pair.flagged = edge_mass > 0.01;

  if (lambda_is_real(pair.lambda)) {
    std::vector<double> re(n);
    for (std::size_t i = 0; i < n; ++i) re[i] = pair.u[i].real();
    const std::size_t skirt = (n - 1) / 20;
    pair.sign_changes =
        sign_changes(re, skirt, n - 1 - skirt);
  } else {
    pair.sign_changes = -1;
  }
  pair.certified = pair.residual <= 1e-8;
}

void sort_descending(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& a, const EigenPair& b) {
                     if (a.lambda.real() != b.lambda.real()) {
                       return a.lambda.real() > b.lambda.real();
                     }
                     return a.lambda.imag() < b.lambda.imag();
                   });
}

std::vector<EigenPair> symmetric_path(const DiscretizedOperator& op,
                                      std::size_t n_eigs,
                                      const SpectrumWindow& window,
                                      std::span<const double> weights) {
  const auto S = tridiagonal_symmetrize(op.interior);
  auto [lo, hi] = gershgorin_bounds(S.diag, S.off);
  if (std::isfinite(window.min_re)) lo = std::max(lo, window.min_re);
  if (std::isfinite(window.radius)) {
    const double slack =
        window.radius * window.radius - window.center.imag() * window.center.imag();
    if (slack < 0.0) return {};
    const double half = std::sqrt(slack);
    lo = std::max(lo, window.center.real() - half);
    hi = std::min(hi, window.center.real() + half);
  }
  const auto values = symmetric_eigenvalues_in(S.diag, S.off, lo, hi, n_eigs);

  const std::size_t m = op.interior.size();
  const Tridiagonal sym{S.diag, S.off, S.off};
  std::vector<EigenPair> pairs;
  pairs.reserve(values.size());
  for (double lambda : values) {
    auto iteration = tridiagonal_inverse_iteration(sym, lambda, 6);
    const auto& v = iteration.vector;

    // Map back through the similarity with a common log shift so strongly
    // growing symmetrizers cannot overflow the eigenvector.
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] != 0.0) {
        shift = std::max(shift, std::log(std::abs(v[i])) - S.log_scale[i]);
      }
    }
    std::vector<double> u(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] != 0.0) {
        u[i] = std::copysign(
            std::exp(std::log(std::abs(v[i])) - S.log_scale[i] - shift), v[i]);
      }
    }

    // Polish in the original coordinates: the similarity can amplify the
    // symmetric-side residual by the scale ratio.
    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best = u;
    for (int sweep = 0; sweep < 3; ++sweep) {
      std::vector<std::complex<double>> uc(m);
      for (std::size_t i = 0; i < m; ++i) uc[i] = u[i];
      const double res = interior_residual(op.interior, uc, lambda);
      if (res < best_residual) {
        best_residual = res;
        best = u;
      }
      if (res <= 1e-13) break;
      std::vector<double> w;
      try {
        w = tridiagonal_solve_shifted(op.interior, lambda, u);
      } catch (const std::runtime_error&) {
        break;
      }
      double norm = 0.0;
      for (double value : w) norm += value * value;
      norm = std::sqrt(norm);
      if (!(norm > 0.0) || !std::isfinite(norm)) break;
      for (double& value : w) value /= norm;
      u = std::move(w);
    }

    EigenPair pair;
    pair.lambda = lambda;
    pair.residual = best_residual;
    pair.u.assign(op.x.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) pair.u[i + 1] = best[i];
    finalize_pair(pair, op.x, weights, op.phase_index);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<EigenPair> dense_path(const DiscretizedOperator& op,
                                  std::size_t n_eigs,
                                  const SpectrumWindow& window,
                                  std::span<const double> weights) {
  const std::size_t m = op.interior.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                            static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    A(i, i) = op.interior.diag[i];
    if (i > 0) A(i, i - 1) = op.interior.lower[i - 1];
    if (i + 1 < m) A(i, i + 1) = op.interior.upper[i];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("compute_spectrum: dense eigensolver failed");
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& lambdas = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (lambdas[a].real() != lambdas[b].real()) {
                       return lambdas[a].real() > lambdas[b].real();
                     }
                     return lambdas[a].imag() < lambdas[b].imag();
                   });

  std::vector<EigenPair> pairs;
  for (std::size_t k : order) {
    if (pairs.size() == n_eigs) break;
    const std::complex<double> lambda = lambdas[k];
    if (lambda.real() < window.min_re) continue;
    if (std::isfinite(window.radius) &&
        std::abs(lambda - window.center) > window.radius) {
      continue;
    }
    EigenPair pair;
    pair.lambda = lambda;
    pair.u.assign(op.x.size(), 0.0);
    std::vector<std::complex<double>> interior(m);
    for (std::size_t i = 0; i < m; ++i) {
      interior[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(k));
      pair.u[i + 1] = interior[i];
    }
    pair.residual = interior_residual(op.interior, interior, lambda);
    finalize_pair(pair, op.x, weights, op.phase_index);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace

DiscretizedOperator build_operator(const FrontProfile& front,
                                   const ModelSpec& model, double a,
                                   double eps) {
  if (front.x.size() < 200) {
    throw std::invalid_argument(
        "build_operator: need at least 200 grid nodes");
  }
  if (eps < 0.0) {
    throw std::invalid_argument("build_operator: eps must be nonnegative");
  }
  auto co = operator_coefficients(front, model, a, eps);

  DiscretizedOperator op;
  op.x = front.x;
  op.a = a;
  op.eps = eps;
  op.c = front.c;
  op.phase_index = front.phase_index;

  const std::size_t n = front.x.size();
  std::vector<double> advection(n);
  for (std::size_t i = 0; i < n; ++i) advection[i] = co.b1[i] - co.b2x[i];
  op.interior = assemble_second_order(op.x, co.b2, advection, co.b0);

  op.b2 = std::move(co.b2);
  op.b2x = std::move(co.b2x);
  op.b2xx = std::move(co.b2xx);
  op.b1 = std::move(co.b1);
  op.b0 = std::move(co.b0);
  return op;
}

std::vector<EigenPair> compute_spectrum(const DiscretizedOperator& op,
                                        std::size_t n_eigs,
                                        const SpectrumWindow& window) {
  if (n_eigs == 0) return {};
  const auto weights = trapezoid_weights(op.x);
  std::vector<EigenPair> pairs =
      tridiagonal_symmetrizable(op.interior)
          ? symmetric_path(op, n_eigs, window, weights)
          : dense_path(op, n_eigs, window, weights);
  sort_descending(pairs);
  return pairs;
}

double translation_eigenpair_check(const FrontProfile& front,
                                   const ModelSpec& model, double a) {
  const std::size_t n = front.x.size();
  if (n < 7) {
    throw std::invalid_argument("translation_eigenpair_check: grid too small");
  }
  const auto co = operator_coefficients(front, model, a, 0.0);

  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (front.phi_x[i] != 0.0) {
      shift = std::max(shift, a * front.x[i] + std::log(std::abs(front.phi_x[i])));
    }
  }
  std::vector<double> mode(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (front.phi_x[i] != 0.0) {
      mode[i] = std::copysign(
          std::exp(a * front.x[i] + std::log(std::abs(front.phi_x[i])) - shift),
          front.phi_x[i]);
    }
  }

  const auto d1 = fd_derivative(front.x, mode, 1);
  const auto d2 = fd_derivative(front.x, mode, 2);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double r = co.b2[i] * d2[i] + co.b1[i] * d1[i] + co.b0[i] * mode[i];
    num += r * r;
    den += mode[i] * mode[i];
  }
  return std::sqrt(num / den);
}

std::vector<double> LiouvilleOperator::to_sturmian(
    std::span<const double> u) const {
  if (u.size() != quarter_power.size()) {
    throw std::invalid_argument("to_sturmian: size mismatch");
  }
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = quarter_power[i] * u[i];
  return v;
}

std::vector<double> LiouvilleOperator::from_sturmian(
    std::span<const double> v) const {
  if (v.size() != quarter_power.size()) {
    throw std::invalid_argument("from_sturmian: size mismatch");
  }
  std::vector<double> u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / quarter_power[i];
  return u;
}

LiouvilleOperator liouville_transform(const DiscretizedOperator& op) {
  const std::size_t n = op.x.size();
  const double floor =
      *std::min_element(op.b2.begin(), op.b2.end());
  if (floor <= 1e-10) {
    throw std::invalid_argument(
        "liouville_transform: leading coefficient is not uniformly positive");
  }

  LiouvilleOperator out;
  out.x = op.x;
  out.phase_index = op.phase_index;
  out.b1t.resize(n);
  out.b0t.resize(n);
  out.quarter_power.resize(n);
  std::vector<double> integrand(n), self_adjoint_rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b2 = op.b2[i];
    const double b2x = op.b2x[i];
    const double root = std::sqrt(b2);
    integrand[i] = 1.0 / root;
    out.quarter_power[i] = std::sqrt(root);
    out.b1t[i] = (op.b1[i] - b2x) / root;
    out.b0t[i] = (5.0 / 16.0) * b2x * b2x / b2 - 0.25 * op.b2xx[i] -
                 0.25 * op.b1[i] * b2x / b2 + op.b0[i];
    self_adjoint_rate[i] = (op.b1[i] - b2x) / b2;
  }
  out.xi = cumulative_trapezoid(op.x, integrand, op.phase_index);
  out.log_weight_xi = cumulative_trapezoid(out.xi, out.b1t, op.phase_index);
  out.log_weight_x =
      cumulative_trapezoid(op.x, self_adjoint_rate, op.phase_index);

  const std::vector<double> ones(n, 1.0);
  out.interior = assemble_second_order(out.xi, ones, out.b1t, out.b0t);
  return out;
}

SturmReport sturm_check(std::span<const EigenPair> pairs) {
  SturmReport report;
  report.ordered_simple = true;
  std::size_t ladder = 0;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& pair = pairs[k];
    if (!lambda_is_real(pair.lambda)) {
      ++report.skipped_nonreal;
      continue;
    }
    SturmEntry entry;
    entry.pair_index = k;
    entry.lambda = pair.lambda.real();
    entry.real = true;

    const std::size_t n = pair.u.size();
    std::vector<double> re(n);
    for (std::size_t i = 0; i < n; ++i) re[i] = pair.u[i].real();
    const std::size_t skirt = (n - 1) / 20;
    entry.sign_changes = sign_changes(re, skirt, n - 1 - skirt);
    entry.matches = entry.sign_changes == static_cast<int>(ladder);

    if (std::isfinite(previous)) {
      const double gap = previous - entry.lambda;
      report.min_gap = std::min(report.min_gap, gap);
      if (!(gap > 1e-8)) report.ordered_simple = false;
    }
    previous = entry.lambda;
    ++ladder;
    report.entries.push_back(entry);
  }
  report.consistent = report.ordered_simple && !report.entries.empty();
  for (const auto& entry : report.entries) {
    if (!entry.matches) report.consistent = false;
  }
  return report;
}

RegularizationSweep regularization_sweep(const FrontProfile& front,
                                         const ModelSpec& model, double a,
                                         std::span<const double> eps_list,
                                         std::size_t n_eigs) {
  for (double eps : eps_list) {
    if (eps < 0.0) {
      throw std::invalid_argument("regularization_sweep: eps must be >= 0");
    }
  }

  RegularizationSweep sweep;
  sweep.eps.assign(eps_list.begin(), eps_list.end());

  const auto reference =
      compute_spectrum(build_operator(front, model, a, 0.0), n_eigs);
  sweep.tracks.resize(reference.size());
  for (std::size_t t = 0; t < reference.size(); ++t) {
    sweep.tracks[t].reference = reference[t].lambda;
  }

  for (double eps : eps_list) {
    const auto pairs =
        compute_spectrum(build_operator(front, model, a, eps), n_eigs);
    std::vector<bool> claimed(pairs.size(), false);
    for (auto& track : sweep.tracks) {
      std::size_t nearest = 0;
      double d1 = std::numeric_limits<double>::infinity();
      double d2 = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double d = std::abs(pairs[k].lambda - track.reference);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          nearest = k;
        } else if (d < d2) {
          d2 = d;
        }
      }
      if (pairs.empty()) {
        track.ambiguous = true;
        track.matched.push_back({std::numeric_limits<double>::quiet_NaN(), 0.0});
        track.drift.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      if (claimed[nearest] || d2 < 2.0 * d1) track.ambiguous = true;
      claimed[nearest] = true;
      track.matched.push_back(pairs[nearest].lambda);
      track.drift.push_back(std::abs(pairs[nearest].lambda - track.reference));
    }
  }

  for (auto& track : sweep.tracks) {
    std::vector<double> le, ld;
    for (std::size_t k = 0; k < sweep.eps.size(); ++k) {
      if (sweep.eps[k] > 0.0 && track.drift[k] > 0.0 &&
          std::isfinite(track.drift[k])) {
        le.push_back(std::log(sweep.eps[k]));
        ld.push_back(std::log(track.drift[k]));
      }
    }
    if (le.size() >= 2) track.fitted_order = fit_line(le, ld).slope;
  }
  return sweep;
}

}  // namespace nagfront
