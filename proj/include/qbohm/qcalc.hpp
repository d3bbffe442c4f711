#pragma once

// Deformed algebra kernel: the q-exponential / q-logarithm pair, the
// associated addition group law, and the logarithmic coordinate map that
// straightens the deformation.  Both deformation appearances, the abstract
// 1+(1-q)u and the spatial 1+gamma*x, run through the same affine factor.

#include <cmath>
#include <limits>
#include <optional>

#include "qbohm/errors.hpp"

namespace qbohm {

// |1-q| below this switches the scalar q-functions to their undeformed limit.
inline constexpr double kQLimitThreshold = 1e-8;

inline double deformation_factor(double gamma, double x) { return 1.0 + gamma * x; }

// Deformation strength for spatial formulas.  gamma is primary; q and xi are
// optional metadata tied to it by gamma = (1-q)/xi.
struct DeformationParams {
  double gamma = 0.0;            // inverse length
  std::optional<double> q;       // dimensionless index
  std::optional<double> xi;      // length scale

  static DeformationParams from_gamma(double gamma_value) {
    DeformationParams p;
    p.gamma = gamma_value;
    p.validate();
    return p;
  }

  static DeformationParams from_q_xi(double q_value, double xi_value) {
    if (xi_value == 0.0 || !std::isfinite(xi_value) || !std::isfinite(q_value))
      throw domain_error("DeformationParams: xi must be finite and nonzero");
    DeformationParams p;
    p.gamma = (1.0 - q_value) / xi_value;
    p.q = q_value;
    p.xi = xi_value;
    p.validate();
    return p;
  }

  bool deformed() const { return gamma != 0.0; }

  void validate() const {
    if (!std::isfinite(gamma)) throw domain_error("DeformationParams: gamma must be finite");
    if (q && xi) {
      const double resid = gamma * (*xi) - (1.0 - *q);
      const double scale = std::abs(1.0 - *q) + std::abs(gamma * (*xi)) + 1.0;
      if (std::abs(resid) > 16.0 * std::numeric_limits<double>::epsilon() * scale)
        throw domain_error("DeformationParams: gamma*xi != 1-q");
    }
  }
};

// exp_q(u) = [1 + (1-q) u]_+^{1/(1-q)}, with the bracket clipped at zero.
inline double q_exp(double u, double q) {
  const double omq = 1.0 - q;
  if (std::abs(omq) < kQLimitThreshold) return std::exp(u);
  const double base = 1.0 + omq * u;
  if (base <= 0.0) return 0.0;
  return std::exp(std::log1p(omq * u) / omq);
}

// ln_q(y) = (y^{1-q} - 1)/(1-q), inverse of q_exp on y > 0.
inline double q_log(double y, double q) {
  if (!(y > 0.0)) throw domain_error("q_log: argument must be positive");
  const double omq = 1.0 - q;
  if (std::abs(omq) < kQLimitThreshold) return std::log(y);
  return std::expm1(omq * std::log(y)) / omq;
}

// a (+)_q b = a + b + (1-q) a b, the law with exp_q(a) exp_q(b) = exp_q(a (+)_q b).
inline double q_add(double a, double b, double q) {
  return a + b + (1.0 - q) * a * b;
}

// a (-)_q b = (a - b)/(1 + (1-q) b); pole at b = 1/(q-1).
inline double q_sub(double a, double b, double q) {
  const double denom = 1.0 + (1.0 - q) * b;
  if (denom == 0.0) throw domain_error("q_sub: pole at b = 1/(q-1)");
  return (a - b) / denom;
}

// u(x) = ln(1+gamma*x)/gamma, the coordinate in which the deformed
// derivative (1+gamma*x) d/dx becomes plain d/du.
inline double deformed_coordinate(double x, double gamma) {
  if (gamma == 0.0) return x;
  if (deformation_factor(gamma, x) <= 0.0) throw singularity_error(gamma, x);
  return std::log1p(gamma * x) / gamma;
}

inline double inverse_coordinate(double u, double gamma) {
  if (gamma == 0.0) return u;
  return std::expm1(gamma * u) / gamma;
}

inline double deformed_coordinate(double x, const DeformationParams& p) {
  return deformed_coordinate(x, p.gamma);
}

inline double inverse_coordinate(double u, const DeformationParams& p) {
  return inverse_coordinate(u, p.gamma);
}

}  // namespace qbohm
