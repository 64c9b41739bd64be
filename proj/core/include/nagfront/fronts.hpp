#pragma once

/// Monotone front profiles of the degenerate-diffusion bistable equation
///
///   (D(phi) phi_x)_x + c phi_x + f(phi) = 0,
///
/// in the four connection classes: stationary fronts between 0 and 1 (both
/// orientations, speed 0, sharp at the degenerate end), degenerate traveling
/// fronts from 0 to alpha, and non-degenerate traveling fronts from 1 to
/// alpha.  Profiles are produced by adaptive shooting from the appropriate
/// invariant manifold and resampled onto a uniform grid containing x = 0,
/// where the phase condition pins the profile value.

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "nagfront/model.hpp"

namespace nagfront {

enum class FrontCase {
  StationaryIncreasing,   // 0 at -inf, 1 at +inf, c = 0, sharp on the left
  StationaryDecreasing,   // 1 at -inf, 0 at +inf, c = 0, sharp on the right
  DegenerateTraveling,    // 0 at -inf, alpha at +inf, c above threshold
  NondegenerateTraveling  // 1 at -inf, alpha at +inf, c above threshold
};

/// Short case codes used on the command line and in file sidecars:
/// "sN-inc", "sN-dec", "Nd", "Nn".
std::string to_code(FrontCase kind);
FrontCase front_case_from_code(std::string_view code);

bool is_stationary(FrontCase kind);
bool is_increasing(FrontCase kind);

struct GridConfig {
  /// Output grid size (nodes).
  std::size_t n = 4001;
  /// Boundary-layer cutoff delta: integration stops when phi is within
  /// delta of an end state.
  double boundary_cutoff = 1e-6;
  /// Launch offset delta_0 along the saddle's unstable eigenvector (the
  /// non-degenerate traveling case shoots from phi = 1 - launch_offset).
  double launch_offset = 1e-6;
  /// Integrator tolerances.  The profile residual picks up sampling jitter
  /// of order tolerance / grid spacing through the finite-difference
  /// stencils, so these sit well below the residual tolerances even for
  /// fine grids.
  double ode_rel_tol = 1e-12;
  double ode_abs_tol = 1e-12;
  /// Value pinned at x = 0.  NaN selects the midpoint of the end states.
  double phase_value = std::numeric_limits<double>::quiet_NaN();
  /// Maximum allowed interior residual of the profile equation; 0 selects
  /// the case default (1e-8 stationary, 1e-7 traveling).
  double residual_tol = 0.0;
};

struct FrontProfile {
  FrontCase kind = FrontCase::StationaryDecreasing;
  double c = 0.0;
  double u_minus = 0.0;  ///< limit as x -> -inf
  double u_plus = 0.0;   ///< limit as x -> +inf
  double phase_value = 0.0;
  std::size_t phase_index = 0;  ///< grid index with x = 0
  double L_minus = 0.0;         ///< |left truncation point|
  double L_plus = 0.0;          ///< right truncation point
  std::vector<double> x, phi, phi_x, phi_xx;
  double residual_max = 0.0;    ///< max interior profile-equation residual
};

/// Stationary front via the conserved quantity: H(phi, phi_x) = 0 gives the
/// first-order law phi_x = -+ (sqrt(2)/D(phi)) sqrt(-potential(phi)), which
/// is integrated outward from the phase point until phi is within the
/// boundary cutoff of each end state.  Requires a balanced model,
/// |potential(1)| <= 1e-10 (see stationary_alpha).
FrontProfile solve_stationary_front(const ModelSpec& model, bool increasing,
                                    const GridConfig& config = {});

/// Traveling front for c strictly above threshold_speed(model) (margin
/// 1e-6).  The non-degenerate case shoots from the saddle at (1, 0) along
/// its unstable eigenvector.  The degenerate case represents the sharp
/// tail below a small switch amplitude by the closed-form second-order
/// center-manifold jet (adaptive marching through that layer would need
/// millions of steps in any parameterization), and integrates the
/// remaining stretch with phi as the independent variable up to the layer
/// at alpha.  kind must be one of the traveling cases.
FrontProfile solve_traveling_front(const ModelSpec& model, FrontCase kind,
                                   double c, const GridConfig& config = {});

/// Pointwise residual of the profile equation on the stored grid, formed
/// with independent fourth-order stencils applied to D(phi) phi_x (never the
/// analytic second-derivative identity, which would be circular).
std::vector<double> profile_residual(const FrontProfile& front,
                                     const ModelSpec& model);

struct DecayReport {
  enum class Side { MinusInfinity, PlusInfinity };
  enum class Law { Exponential, Algebraic };
  Side side = Side::MinusInfinity;
  Law law = Law::Exponential;
  /// Exponential: |d/dx log|phi - u|| on the window.  Algebraic: the
  /// log-log slope itself (sign kept).
  double fitted_rate = 0.0;
  double predicted_rate = 0.0;
  double relative_error = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t window_points = 0;
  bool conclusive = false;
};

/// Tail-decay check: fits each tail on the window between 70% and 95% of
/// the half-width (the final 5% is dropped as truncation-polluted) and
/// compares against the predicted closed-form rates: stationary fronts
/// sqrt(-f'(1)/D(1)) on the non-degenerate side and log-log slope -2 on the
/// degenerate side; degenerate traveling |f'(0)|/c and
/// (c + sqrt(c^2 - 4 D(alpha) f'(alpha))) / (2 D(alpha)); non-degenerate
/// traveling the same alpha-side rate plus
/// (c + sqrt(c^2 - 4 D(1) f'(1))) / (2 D(1)) on the 1-side.  Windows with
/// fewer than 20 nodes are reported inconclusive.
std::vector<DecayReport> verify_decay(const FrontProfile& front,
                                      const ModelSpec& model);

/// Maximum of |D(phi) phi_xx / phi_x| over the grid.  Throws if phi_x
/// vanishes anywhere (monotonicity violation).
double coefficient_bound(const FrontProfile& front, const ModelSpec& model);

/// Profile value at arbitrary x inside the grid by local cubic
/// interpolation.
double sample_phi(const FrontProfile& front, double x);

}  // namespace nagfront
