#include "nagfront/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace nagfront {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("polynomial coefficient is not finite");
    }
  }
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coeffs_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
  }
  return Polynomial(std::move(a));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> p(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      p[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  return Polynomial(std::move(p));
}

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::ShigesadaCubic: return "shigesada-cubic";
    case ModelFamily::GeneralPolynomial: return "polynomial";
  }
  return "unknown";
}

namespace {

void require_alpha_in_open_unit(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("alpha must lie strictly inside (0,1)");
  }
}

}  // namespace

ModelSpec ModelSpec::shigesada_cubic(double b, double alpha) {
  require_alpha_in_open_unit(alpha);
  if (!std::isfinite(b) || b <= 0.0) {
    throw std::invalid_argument("Shigesada diffusivity requires b > 0");
  }
  // D(u) = u^2 + b u;  f(u) = u(1-u)(u-alpha) = -u^3 + (1+alpha)u^2 - alpha u.
  Polynomial D({0.0, b, 1.0});
  Polynomial f({0.0, -alpha, 1.0 + alpha, -1.0});
  ModelSpec m;
  m.family_ = ModelFamily::ShigesadaCubic;
  m.alpha_ = alpha;
  m.b_ = b;
  m.D_ = D;
  m.D_prime_ = D.derivative();
  m.D_second_ = m.D_prime_.derivative();
  m.f_ = f;
  m.f_prime_ = f.derivative();
  m.potential_ = (D * f).antiderivative();
  return m;
}

ModelSpec ModelSpec::general_polynomial(std::vector<double> diffusion_coeffs,
                                        std::vector<double> reaction_coeffs,
                                        double alpha) {
  require_alpha_in_open_unit(alpha);
  Polynomial D{std::move(diffusion_coeffs)};
  Polynomial f{std::move(reaction_coeffs)};
  if (D.degree() > 6 || f.degree() > 6) {
    throw std::invalid_argument("polynomial degrees above 6 are not supported");
  }
  ModelSpec m;
  m.family_ = ModelFamily::GeneralPolynomial;
  m.alpha_ = alpha;
  m.b_ = std::numeric_limits<double>::quiet_NaN();
  m.D_ = D;
  m.D_prime_ = D.derivative();
  m.D_second_ = m.D_prime_.derivative();
  m.f_ = f;
  m.f_prime_ = f.derivative();
  m.potential_ = (D * f).antiderivative();
  return m;
}

double ModelSpec::potential(double phi) const {
  if (!(phi >= 0.0 && phi <= 1.0)) {
    throw std::domain_error("potential requires phi in [0,1]");
  }
  return potential_(phi);
}

double ModelSpec::hamiltonian(double phi, double v) const {
  const double flux = D(phi) * v;
  return 0.5 * flux * flux + potential(phi);
}

ValidationReport validate_hypotheses(const ModelSpec& model) {
  ValidationReport report;
  auto record = [&report](std::string name, bool ok, double witness,
                          std::string detail) {
    report.checks.push_back(
        {std::move(name), ok, ok ? 0.0 : witness, std::move(detail)});
  };

  constexpr int kSamples = 1001;
  auto grid = [&](int i) { return static_cast<double>(i) / (kSamples - 1); };

  // Degeneracy exactly at u = 0.
  record("D(0) = 0", model.D(0.0) == 0.0, 0.0, "diffusivity at the origin");

  {
    bool ok = true;
    double witness = 0.0;
    for (int i = 1; i < kSamples; ++i) {
      const double u = grid(i);
      if (!(model.D(u) > 0.0)) { ok = false; witness = u; break; }
    }
    record("D > 0 on (0,1]", ok, witness, "sampled positivity");
  }
  {
    bool ok = true;
    double witness = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double u = grid(i);
      if (!(model.D_prime(u) > 0.0)) { ok = false; witness = u; break; }
    }
    record("D' > 0 on [0,1]", ok, witness, "sampled strict monotonicity");
  }

  // Reaction roots, exact up to the running rounding-error bound of Horner
  // evaluation (zero for exactly representable cancellations).
  const double a = model.alpha();
  auto is_root = [&model](double u) {
    double bound = 0.0;
    for (double c : model.reaction_polynomial().coefficients()) {
      bound += std::abs(c);
    }
    bound *= 8.0 * std::numeric_limits<double>::epsilon();
    return std::abs(model.f(u)) <= bound;
  };
  record("f(0) = 0", model.f(0.0) == 0.0, 0.0, "root at 0");
  record("f(alpha) = 0", is_root(a), a, "root at alpha");
  record("f(1) = 0", is_root(1.0), 1.0, "root at 1");

  record("f'(0) < 0", model.f_prime(0.0) < 0.0, 0.0, "stable zero at 0");
  record("f'(1) < 0", model.f_prime(1.0) < 0.0, 1.0, "stable zero at 1");
  record("f'(alpha) > 0", model.f_prime(a) > 0.0, a, "unstable zero at alpha");

  {
    bool ok = true;
    double witness = 0.0;
    for (int i = 1; i < kSamples; ++i) {
      const double u = a * grid(i);
      if (u <= 0.0 || u >= a) continue;
      if (!(model.f(u) < 0.0)) { ok = false; witness = u; break; }
    }
    record("f < 0 on (0,alpha)", ok, witness, "sampled sign");
  }
  {
    bool ok = true;
    double witness = 0.0;
    for (int i = 1; i < kSamples; ++i) {
      const double u = a + (1.0 - a) * grid(i);
      if (u <= a || u >= 1.0) continue;
      if (!(model.f(u) > 0.0)) { ok = false; witness = u; break; }
    }
    record("f > 0 on (alpha,1)", ok, witness, "sampled sign");
  }

  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const HypothesisCheck& c) { return c.passed; });
  return report;
}

double threshold_speed(const ModelSpec& model) {
  const ValidationReport report = validate_hypotheses(model);
  if (!report.all_passed) {
    throw std::invalid_argument("threshold_speed requires a validated model");
  }
  const double a = model.alpha();
  return 2.0 * std::sqrt(model.D(a) * model.f_prime(a));
}

double stationary_alpha(double b) {
  if (!std::isfinite(b) || b <= 0.0) {
    throw std::invalid_argument("stationary_alpha requires b > 0");
  }
  auto imbalance = [b](double alpha) {
    return ModelSpec::shigesada_cubic(b, alpha).potential(1.0);
  };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  if (!(imbalance(lo) > 0.0 && imbalance(hi) < 0.0)) {
    throw std::runtime_error("stationary_alpha: no sign change on (0,1)");
  }
  boost::math::tools::eps_tolerance<double> tol(53);
  std::uintmax_t max_iter = 200;
  auto r = boost::math::tools::toms748_solve(imbalance, lo, hi, tol, max_iter);
  const double root = 0.5 * (r.first + r.second);
  if (std::abs(imbalance(root)) > 1e-12) {
    throw std::runtime_error("stationary_alpha: residual above 1e-12");
  }
  return root;
}

nlohmann::ordered_json to_json(const ModelSpec& model) {
  nlohmann::ordered_json j;
  j["family"] = to_string(model.family());
  if (model.family() == ModelFamily::ShigesadaCubic) {
    j["b"] = model.b();
    j["alpha"] = model.alpha();
  } else {
    j["D"] = model.diffusion_polynomial().coefficients();
    j["f"] = model.reaction_polynomial().coefficients();
    j["alpha"] = model.alpha();
  }
  return j;
}

ModelSpec model_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "shigesada-cubic") {
    return ModelSpec::shigesada_cubic(j.at("b").get<double>(),
                                      j.at("alpha").get<double>());
  }
  if (family == "polynomial") {
    return ModelSpec::general_polynomial(
        j.at("D").get<std::vector<double>>(),
        j.at("f").get<std::vector<double>>(), j.at("alpha").get<double>());
  }
  throw std::invalid_argument("unknown model family: " + family);
}

}  // namespace nagfront
