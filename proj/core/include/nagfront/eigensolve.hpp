#pragma once

/// Discretization and point-spectrum extraction for the weighted linearized
/// operator around a computed front: conservative second-order assembly of
/// L_a = b2 d^2/dx^2 + b1 d/dx + b0 with Dirichlet ends, eigenpair solvers
/// (Sturm bisection when a diagonal similarity symmetrizes the matrix, dense
/// otherwise), the Liouville change of variables to normal form, oscillation
/// checks, and the small-viscosity regularization sweep.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "nagfront/fronts.hpp"
#include "nagfront/model.hpp"
#include "nagfront/tridiag.hpp"

namespace nagfront {

/// Dirichlet discretization of the weighted operator on the front's grid.
/// The coefficient arrays cover every node; the tridiagonal block acts on
/// the interior nodes 1..n-2 after eliminating the zero boundary values.
struct DiscretizedOperator {
  std::vector<double> x;
  std::vector<double> b2;    ///< D(phi) + eps
  std::vector<double> b2x;   ///< d/dx of b2, evaluated analytically
  std::vector<double> b2xx;  ///< d^2/dx^2 of b2, evaluated analytically
  std::vector<double> b1;
  std::vector<double> b0;
  double a = 0.0;
  double eps = 0.0;
  double c = 0.0;
  std::size_t phase_index = 0;
  Tridiagonal interior;
};

/// Assembles the conjugated operator for weight exponent a and viscosity
/// eps >= 0.  Coefficient derivatives come from the profile derivatives, not
/// from differencing.  Grids with fewer than 200 nodes are rejected
/// (std::invalid_argument), as are negative eps.
DiscretizedOperator build_operator(const FrontProfile& front,
                                   const ModelSpec& model, double a,
                                   double eps = 0.0);

struct EigenPair {
  std::complex<double> lambda;
  /// Eigenfunction on the full grid, zero at both boundary nodes, unit
  /// discrete L2 norm, rotated so the value at the phase node is real and
  /// positive.
  std::vector<std::complex<double>> u;
  /// ||T u - lambda u|| / ||u|| by direct application of the assembled
  /// interior matrix.
  double residual = std::numeric_limits<double>::infinity();
  /// Fraction of the L2 mass lying within 10% of the domain length of
  /// either boundary.
  double boundary_mass = 0.0;
  /// Set when boundary_mass exceeds 1%: the mode leans on the truncation
  /// and is suspect of being an essential-spectrum artifact.
  bool flagged = false;
  /// Interior sign changes of Re u, ignoring the outer 5% of nodes; -1 when
  /// lambda is not real.
  int sign_changes = -1;
  /// Residual at or below 1e-8 and the iteration converged.
  bool certified = false;
};

/// Restricts which eigenvalues are returned: a right half-plane Re >= min_re
/// and, when radius is finite, a disc |lambda - center| <= radius.
struct SpectrumWindow {
  double min_re = -std::numeric_limits<double>::infinity();
  std::complex<double> center{0.0, 0.0};
  double radius = std::numeric_limits<double>::infinity();
};

/// The n_eigs eigenpairs of largest real part inside the window, sorted by
/// descending real part.  Symmetrizable matrices go through Sturm bisection
/// plus inverse iteration; the rest fall back to a dense solve whose cost
/// grows cubically, so degenerate (eps = 0) operators should be assembled on
/// grids of a few thousand nodes at most.  Pairs whose iteration failed to
/// converge are returned uncertified rather than dropped.
std::vector<EigenPair> compute_spectrum(const DiscretizedOperator& op,
                                        std::size_t n_eigs,
                                        const SpectrumWindow& window = {});

/// Relative residual || L_a (e^{ax} phi_x) || / || e^{ax} phi_x || measured
/// with 5-point stencils on the interior, the discrete counterpart of the
/// translation eigenpair at lambda = 0.  The weighted derivative is built in
/// log space and rescaled, so steep weights cannot overflow.
double translation_eigenpair_check(const FrontProfile& front,
                                   const ModelSpec& model, double a);

/// Normal form of the operator after x -> xi(x) = int_0^x b2^{-1/2} and
/// u = b2^{-1/4} v: d^2/dxi^2 + b1t d/dxi + b0t on the (nonuniform) xi grid,
/// sharing node indices with the original grid.
struct LiouvilleOperator {
  std::vector<double> x;
  std::vector<double> xi;
  std::vector<double> b1t;
  std::vector<double> b0t;
  /// b2^{1/4} per node; to_sturmian multiplies by it, from_sturmian divides.
  std::vector<double> quarter_power;
  /// log of the symmetrizing weight on the xi grid, zero at the phase node.
  std::vector<double> log_weight_xi;
  /// log of the symmetrizing weight pulled back to x, zero at the phase
  /// node; makes the original operator formally self-adjoint.
  std::vector<double> log_weight_x;
  std::size_t phase_index = 0;
  Tridiagonal interior;

  std::vector<double> to_sturmian(std::span<const double> u) const;
  std::vector<double> from_sturmian(std::span<const double> v) const;
};

/// Requires a uniformly elliptic operator: min b2 <= 1e-10 is rejected
/// (std::invalid_argument).
LiouvilleOperator liouville_transform(const DiscretizedOperator& op);

/// Oscillation bookkeeping for a candidate eigenvalue ladder.
struct SturmEntry {
  std::size_t pair_index = 0;
  double lambda = 0.0;
  int sign_changes = -1;
  bool real = false;
  /// Sign changes equal the entry's position in the ladder of real pairs.
  bool matches = false;
};

struct SturmReport {
  std::vector<SturmEntry> entries;
  std::size_t skipped_nonreal = 0;
  /// Smallest gap between consecutive real eigenvalues.
  double min_gap = std::numeric_limits<double>::infinity();
  /// Strictly descending with gaps above 1e-8.
  bool ordered_simple = false;
  /// ordered_simple and every entry matches.
  bool consistent = false;
};

/// Counts interior sign changes of each real eigenfunction (outer 5% of
/// nodes ignored) and verifies the j-th real pair shows exactly j changes.
/// Non-real eigenvalues are skipped and tallied, not fatal.
SturmReport sturm_check(std::span<const EigenPair> pairs);

/// One tracked eigenvalue across the viscosity sweep.
struct RegularizationTrack {
  std::complex<double> reference;
  std::vector<std::complex<double>> matched;
  std::vector<double> drift;
  /// Slope of log drift against log eps over the positive entries.
  double fitted_order = 0.0;
  /// Nearest-neighbor matching was not clear-cut for some eps.
  bool ambiguous = false;
};

struct RegularizationSweep {
  std::vector<double> eps;
  std::vector<RegularizationTrack> tracks;
};

/// Recomputes the top n_eigs eigenvalues at each eps (the eps = 0 operator
/// is assembled directly, not as a limit) and matches them to the eps = 0
/// reference by nearest neighbor.  Negative eps entries are rejected.
RegularizationSweep regularization_sweep(const FrontProfile& front,
                                         const ModelSpec& model, double a,
                                         std::span<const double> eps_list,
                                         std::size_t n_eigs);

}  // namespace nagfront
