#pragma once

/// Bistable reaction-diffusion models with density-degenerate diffusion,
///
///   u_t = (D(u) u_x)_x + f(u),
///
/// where the diffusivity vanishes at u = 0 (D(0) = 0, D' > 0 on [0,1]) and
/// the reaction is bistable with stable zeros at u = 0 and u = 1 and an
/// unstable zero at u = alpha in (0,1).  The canonical family couples the
/// quadratic diffusivity D(u) = u^2 + b*u with the cubic reaction
/// f(u) = u(1-u)(u-alpha); general polynomial pairs are accepted as well.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nagfront {

/// Dense univariate polynomial, coefficients in ascending order of degree.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double x) const;
  Polynomial derivative() const;
  /// Antiderivative with vanishing constant term.
  Polynomial antiderivative() const;
  Polynomial operator*(const Polynomial& other) const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

private:
  std::vector<double> coeffs_{0.0};
};

enum class ModelFamily { ShigesadaCubic, GeneralPolynomial };

std::string to_string(ModelFamily family);

/// Immutable diffusion/reaction pair together with the location alpha of the
/// unstable reaction zero.  All evaluations are pure; instances are safe to
/// share between threads.
class ModelSpec {
public:
  /// D(u) = u^2 + b*u with b > 0, f(u) = u(1-u)(u-alpha).
  static ModelSpec shigesada_cubic(double b, double alpha);

  /// General polynomial pair; the caller must supply alpha explicitly and it
  /// is verified (never discovered) against f.
  static ModelSpec general_polynomial(std::vector<double> diffusion_coeffs,
                                      std::vector<double> reaction_coeffs,
                                      double alpha);

  double D(double u) const { return D_(u); }
  double D_prime(double u) const { return D_prime_(u); }
  double D_second(double u) const { return D_second_(u); }
  double f(double u) const { return f_(u); }
  double f_prime(double u) const { return f_prime_(u); }

  double alpha() const { return alpha_; }
  /// Shigesada b parameter; NaN for general polynomial models.
  double b() const { return b_; }
  ModelFamily family() const { return family_; }

  /// Integral of D*f from 0 to phi, evaluated through the exact polynomial
  /// antiderivative (no quadrature error).  Requires phi in [0,1].
  double potential(double phi) const;

  /// Conserved quantity of the stationary profile equation:
  /// H(phi, v) = (D(phi) v)^2 / 2 + potential(phi).  Requires phi in [0,1].
  double hamiltonian(double phi, double v) const;

  const Polynomial& diffusion_polynomial() const { return D_; }
  const Polynomial& reaction_polynomial() const { return f_; }

private:
  ModelSpec() = default;

  ModelFamily family_ = ModelFamily::ShigesadaCubic;
  double alpha_ = 0.0;
  double b_ = 0.0;
  Polynomial D_, D_prime_, D_second_;
  Polynomial f_, f_prime_;
  Polynomial potential_;  // antiderivative of D*f
};

struct HypothesisCheck {
  std::string name;      ///< hypothesis being verified
  bool passed = false;
  double witness = 0.0;  ///< sample point exhibiting a failure (0 if passed)
  std::string detail;
};

struct ValidationReport {
  bool all_passed = false;
  std::vector<HypothesisCheck> checks;
};

/// Verifies the structural hypotheses on D and f: degeneracy only at 0
/// (D(0) = 0, D > 0 on (0,1], D' > 0 on [0,1]) and bistability of f
/// (zeros exactly at {0, alpha, 1} with f'(0) < 0, f'(1) < 0, f'(alpha) > 0,
/// f < 0 on (0,alpha), f > 0 on (alpha,1)).  Open conditions are sampled on
/// a uniform 1001-point grid; root conditions are checked exactly.
ValidationReport validate_hypotheses(const ModelSpec& model);

/// Minimal wave speed scale 2*sqrt(D(alpha) f'(alpha)); traveling monotone
/// fronts onto the state alpha exist only for speeds strictly above it.
double threshold_speed(const ModelSpec& model);

/// The unique alpha in (0,1) for which the Shigesada-cubic potential
/// satisfies potential(1) = 0, i.e. for which a stationary front exists.
/// Found by bracketed root-finding; |potential(1)| <= 1e-12 at the result.
double stationary_alpha(double b);

/// JSON form: {"family":"shigesada-cubic","b":1.0,"alpha":0.5} or
/// {"family":"polynomial","D":[...],"f":[...],"alpha":...}.
nlohmann::ordered_json to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

}  // namespace nagfront
