#pragma once

/// Real tridiagonal matrix utilities: multiplication, shifted solves with
/// partial pivoting, diagonal symmetrization, and symmetric eigenvalue
/// extraction by Sturm-sequence bisection plus inverse iteration.

#include <cstddef>
#include <span>
#include <vector>

namespace nagfront {

/// Row i couples u[i-1], u[i], u[i+1] with weights lower[i-1], diag[i],
/// upper[i].  lower and upper hold one entry fewer than diag.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return diag.size(); }
};

std::vector<double> tridiagonal_apply(const Tridiagonal& T,
                                      std::span<const double> u);

/// Solves (T - shift I) u = rhs by Gaussian elimination with partial
/// pivoting.  Throws std::runtime_error when the shifted matrix is exactly
/// singular; near-singular systems return large solutions, which is what
/// inverse iteration relies on.
std::vector<double> tridiagonal_solve_shifted(const Tridiagonal& T,
                                              double shift,
                                              std::span<const double> rhs);

/// True when every paired off-diagonal product upper[i] * lower[i] is
/// strictly positive, so that a positive diagonal similarity makes T
/// symmetric.
bool tridiagonal_symmetrizable(const Tridiagonal& T);

/// Diagonal similarity S T S^-1 with S = diag(exp(log_scale)).  The scale is
/// accumulated in log space so long domains with strongly growing
/// symmetrizers stay representable.  Eigenvectors map back through
/// u = exp(-log_scale) .* v.
struct SymmetrizedTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> log_scale;

  std::size_t size() const { return diag.size(); }
};

/// Throws std::invalid_argument when T is not symmetrizable.
SymmetrizedTridiagonal tridiagonal_symmetrize(const Tridiagonal& T);

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, from the signs of the LDL^T pivots.
std::size_t sturm_count_below(std::span<const double> diag,
                              std::span<const double> off, double x);

/// Interval [lo, hi] guaranteed to contain all eigenvalues (Gershgorin).
std::pair<double, double> gershgorin_bounds(std::span<const double> diag,
                                            std::span<const double> off);

/// The k largest eigenvalues with value in [lo, hi], descending, located by
/// bisection on the Sturm count.  Fewer than k are returned when the
/// interval holds fewer.
std::vector<double> symmetric_eigenvalues_in(std::span<const double> diag,
                                             std::span<const double> off,
                                             double lo, double hi,
                                             std::size_t k);

/// Inverse iteration for the eigenvector of T at an eigenvalue estimate.
/// Returns the unit-norm vector and refines lambda in place with one
/// Rayleigh quotient per sweep; converged reports whether successive
/// iterates stabilized.
struct InverseIterationResult {
  std::vector<double> vector;
  double lambda = 0.0;
  bool converged = false;
};

InverseIterationResult tridiagonal_inverse_iteration(const Tridiagonal& T,
                                                     double lambda,
                                                     int max_sweeps = 8);

}  // namespace nagfront
