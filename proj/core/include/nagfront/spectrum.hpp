#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nagfront/fronts.hpp"
#include "nagfront/model.hpp"

namespace nagfront {

/// Spatial end of the profile an asymptotic statement refers to.
enum class Side { Minus, Plus };

/// End state u_- or u_+ of the given front case.
double end_state(const ModelSpec& model, FrontCase kind, Side side);

/// Quadratic p(a; u) = D(u) a^2 - c a + f'(u).  Its sign at an end state
/// controls where the weighted essential spectrum sits: the k = 0 Fredholm
/// border at u has real part p(a; u).
double weight_quadratic(const ModelSpec& model, double u, double c, double a);

/// Roots (a1, a2) of p(.; u) with a1 <= a2; p < 0 exactly on (a1, a2).
/// Requires D(u) > 0 and a nonnegative discriminant (for f'(u) < 0 the
/// roots are always real; at u = alpha they are real iff c is at least the
/// minimal front speed).
std::pair<double, double> weight_roots(const ModelSpec& model, double u,
                                       double c);

/// Fredholm border of the weighted, regularized operator at one end state:
/// lambda(k) = De(u)(a^2 - k^2) - ac + f'(u) + ik(c - 2a De(u)) with
/// De(u) = D(u) + eps.  On a degenerate end with eps = 0 the curve
/// collapses to the vertical line Re lambda = -ac + f'(u).
struct BorderCurve {
  Side side = Side::Minus;
  double eps = 0.0;
  double a = 0.0;
  std::vector<double> k;
  std::vector<double> re_lambda;
  std::vector<double> im_lambda;
  /// Closed-form maximum of Re lambda over all real k, attained at k = 0.
  double max_re = 0.0;
};

/// Uniform 2001-point grid on [-20, 20]; the borders are parabolas in k,
/// so the maximum structure near k = 0 is fully resolved.
std::vector<double> default_k_grid();

BorderCurve fredholm_border(const ModelSpec& model, FrontCase kind, double c,
                            double a, double eps, Side side,
                            std::span<const double> k_grid);

/// Right edge of the region of consistent splitting: the larger of the two
/// k = 0 border real parts.  lambda with Re lambda above this value lies in
/// the region where both asymptotic matrices are hyperbolic.
double consistent_splitting_bound(const ModelSpec& model, FrontCase kind,
                                  double c, double a, double eps);

enum class StabilityClass { CaseI, CaseII, Stationary };

std::string to_string(StabilityClass kind);

/// Dichotomy of the bistable traveling case: a common stabilizing weight
/// for both end states exists for every speed (case i) or only above a
/// finite threshold c_hat (case ii).
struct Classification {
  StabilityClass kind = StabilityClass::CaseI;
  /// rho = D(alpha)/D(1), the end-state diffusivity ratio.
  double rho = 0.0;
  /// Feasibility indicator h evaluated at the minimal front speed.
  double h_at_cbar = 0.0;
  /// Smallest speed with a nonempty weight window: the minimal front speed
  /// in case i, the root c_hat of h(c) = 1 - rho in case ii.
  double c0 = 0.0;
  /// Root of h(c) = 1 - rho (case ii only, NaN otherwise).
  double c_hat = 0.0;
  /// Set when the root bracket could not be established; c0 falls back to
  /// the minimal front speed and callers should surface a warning.
  bool bracket_failed = false;
};

/// Indicator h(c) = rho sqrt(1 - 4 D(1) f'(1) / c^2)
///                + sqrt(1 - 4 D(alpha) f'(alpha) / c^2): a weight window
/// common to both end states of the bistable traveling case exists iff
/// h(c) > 1 - rho.
double weight_feasibility_indicator(const ModelSpec& model, double c);

/// Classifies the model into case i / case ii.  For the canonical family
/// the test is the exact rational comparison
/// (alpha + b)(1 + 2 alpha) > 1 + b; general models compare h at the
/// minimal speed against 1 - rho directly.
Classification classify_and_threshold(const ModelSpec& model);

/// Exponential-weight selection for one front case.
struct WeightPlan {
  FrontCase kind = FrontCase::StationaryDecreasing;
  double c = 0.0;
  /// Chosen weight (admissible-interval midpoint; 0 for stationary cases).
  double a = 0.0;
  double a_lo = 0.0;
  double a_hi = 0.0;
  /// Degenerate-case cap c / (2 D(alpha)) on the weight (NaN otherwise).
  double nd_cap = 0.0;
  /// Essential-spectrum margin by the case convention: the exact -max of
  /// the k = 0 borders for stationary and degenerate cases, half the
  /// smaller border distance for the bistable case.
  double mu0 = 0.0;
  /// -max of the two k = 0 border real parts at the chosen weight.
  double mu0_exact = 0.0;
  StabilityClass classification = StabilityClass::Stationary;
  /// Speed threshold for feasibility of this case.
  double c0 = 0.0;
  bool feasible = false;
  /// Violated inequality when infeasible; empty otherwise.
  std::string infeasible_reason;
};

/// Weight window and margin for the given case.  Stationary cases require
/// c = 0 and select a = 0; the degenerate traveling case uses the window
/// (a1(alpha), c/(2 D(alpha))); the bistable traveling case uses
/// (a1(alpha), min{a2(alpha), a2(1)}) and is feasible iff c exceeds the
/// classification threshold.
WeightPlan select_weight(const ModelSpec& model, FrontCase kind, double c);

/// First-order asymptotic system at one end state, for regularized
/// diffusivity De(u) = D(u) + eps > 0.
struct AsymptoticSplitting {
  /// Companion matrix [[0, 1], [(lambda - b0)/De, -b1/De]] with the
  /// constant coefficients b1 = c - 2 a De(u), b0 = p_eps(a; u).
  std::complex<double> matrix[2][2];
  /// Spatial eigenvalues ordered by real part: mu1 decaying, mu2 growing
  /// whenever the splitting verdict holds.
  std::complex<double> mu1;
  std::complex<double> mu2;
  /// Consistent splitting: both real parts nonzero with opposite signs.
  bool split = false;
};

AsymptoticSplitting asymptotic_matrix(const ModelSpec& model, FrontCase kind,
                                      double c, double a, double eps,
                                      std::complex<double> lambda, Side side);

/// Decaying spatial mode at the degenerate-case right end state:
/// mu1 = a - c/(2 D(alpha)) - sqrt(zeta)/2 with the principal branch of
/// zeta = (c/D(alpha) - 2a)^2 + 4 (lambda - p(a; alpha)) / D(alpha).
/// Requires Re lambda above the splitting bound by 1e-12; the returned
/// mode satisfies Re mu1 < 0 throughout that region.
struct DecayingMode {
  std::complex<double> mu1;
  std::complex<double> zeta;
};

DecayingMode decaying_mode(const ModelSpec& model, double c, double a,
                           std::complex<double> lambda);

}  // namespace nagfront
