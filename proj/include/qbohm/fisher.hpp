#pragma once

// Fisher information functionals for the three pictures (standard, variable
// mass, deformed), score fields, the variational derivative of the deformed
// functional, kinetic-energy identities and the Cramer-Rao report.
//
// Density-derivative integrands are evaluated through the signed square
// root of the density with fourth-order stencils, which stays conditioned
// across interior zeros; the public derivative operators keep their
// second-order contract.

#include <cmath>
#include <limits>
#include <vector>

#include "qbohm/calculus.hpp"
#include "qbohm/field.hpp"

namespace qbohm {

namespace detail {

inline RealField as_rho(const RealField& f, const char* what) {
  if (f.kind == RealKind::rho) return f;
  if (f.kind == RealKind::varrho_q) return rho_from_varrho(f);
  throw domain_error(std::string(what) + ": input must be a density");
}

inline RealField as_varrho(const RealField& f, const char* what) {
  if (f.kind == RealKind::varrho_q) return f;
  if (f.kind == RealKind::rho) return varrho_from_rho(f);
  throw domain_error(std::string(what) + ": input must be a density");
}

}  // namespace detail

// I_F[rho] = integral (rho')^2 / rho dx = 4 integral (d sqrt(rho)/dx)^2 dx.
inline double fisher_standard(const RealField& density_field) {
  const RealField rho = detail::as_rho(density_field, "fisher_standard");
  const RealField amp = signed_sqrt(rho);
  const auto d = derivative_o4(amp.values, rho.grid.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 4.0 * d[i] * d[i];
  return integral(rho.grid, w);
}

// Same functional taken directly from a wavefunction: 4 integral |psi'|^2 dx.
inline double fisher_standard(const ComplexField& psi) {
  const auto d = derivative_o4(psi.values, psi.grid.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 4.0 * std::norm(d[i]);
  return integral(psi.grid, w);
}

// Variable-mass functional I[rho] = integral (m0/m(x)) (rho')^2 / rho dx.
inline double fisher_pdm(const RealField& density_field) {
  const RealField rho = detail::as_rho(density_field, "fisher_pdm");
  const SpatialGrid& g = rho.grid;
  const RealField amp = signed_sqrt(rho);
  const auto d = derivative_o4(amp.values, g.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = deformation_factor(g.params.gamma, g.node(i));
    w[i] = 4.0 * f * f * d[i] * d[i];
  }
  return integral(g, w);
}

// Deformed functional I_q[varrho] = integral (D varrho)^2 / varrho against
// the deformed measure; equivalently 4 integral (1+gamma*x) (s')^2 dx with
// s the signed root of varrho.
inline double fisher_deformed(const RealField& density_field) {
  const RealField varrho = detail::as_varrho(density_field, "fisher_deformed");
  const SpatialGrid& g = varrho.grid;
  const RealField amp = signed_sqrt(varrho);
  const auto d = derivative_o4(amp.values, g.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = deformation_factor(g.params.gamma, g.node(i));
    w[i] = 4.0 * f * d[i] * d[i];
  }
  return integral(g, w);
}

// Score field Omega = D varrho / varrho; NaN below the node threshold.
inline RealField score_function(const RealField& density_field) {
  const RealField varrho = detail::as_varrho(density_field, "score_function");
  const SpatialGrid& g = varrho.grid;
  const auto dv = detail::deformed_derivative_values(g, varrho.values, 4);
  double peak = 0.0;
  for (double v : varrho.values) peak = std::max(peak, v);
  const double cut = kNodeThreshold * kNodeThreshold * peak;
  std::vector<double> w(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i)
    w[i] = varrho.values[i] < cut ? std::numeric_limits<double>::quiet_NaN()
                                  : dv[i] / varrho.values[i];
  return RealField(g, std::move(w), RealKind::generic);
}

// <Omega^2> under varrho and the deformed measure.  Masked points take the
// amplitude-form limit of the integrand, 4 (1+gamma*x) (s')^2 with s the
// signed root, which is the finite continuation of Omega^2 varrho there.
inline double expectation_score_sq(const RealField& density_field) {
  const RealField varrho = detail::as_varrho(density_field, "expectation_score_sq");
  const SpatialGrid& g = varrho.grid;
  const RealField omega = score_function(varrho);
  const RealField amp = signed_sqrt(varrho);
  const auto ds = derivative_o4(amp.values, g.spacing());
  std::vector<double> w(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double f = deformation_factor(g.params.gamma, g.node(i));
    if (std::isnan(omega.values[i]))
      w[i] = 4.0 * f * ds[i] * ds[i];
    else
      w[i] = omega.values[i] * omega.values[i] * varrho.values[i] / f;
  }
  // w already carries the 1/(1+gamma*x) of the measure.
  return simpson(w, g.spacing());
}

// Variational derivative of I_q: delta I_q / delta varrho =
// (D varrho / varrho)^2 - 2 D^2 varrho / varrho, evaluated literally from
// the density.  Ill conditioned close to nodes (masked at the threshold);
// away from nodes it reproduces 8 m0 Q / hbar^2.
inline RealField fisher_variation(const RealField& density_field) {
  const RealField varrho = detail::as_varrho(density_field, "fisher_variation");
  const SpatialGrid& g = varrho.grid;
  const double h = g.spacing();
  const double gamma = g.params.gamma;
  const auto d1 = derivative_o4(varrho.values, h);
  const auto d2 = second_derivative_o4(varrho.values, h);
  double peak = 0.0;
  for (double v : varrho.values) peak = std::max(peak, v);
  const double cut = kNodeThreshold * kNodeThreshold * peak;
  std::vector<double> w(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    if (varrho.values[i] < cut) {
      w[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double f = deformation_factor(gamma, g.node(i));
    const double dv = f * d1[i];                              // D varrho
    const double ddv = f * f * d2[i] + gamma * f * d1[i];     // D^2 varrho
    w[i] = (dv / varrho.values[i]) * (dv / varrho.values[i]) - 2.0 * ddv / varrho.values[i];
  }
  return RealField(g, std::move(w), RealKind::generic);
}

// ---------------------------------------------------------------------------
// Kinetic expectations.

// <T> in the deformed picture: (hbar^2/2m0) integral |D phi|^2 d_q x.
inline double kinetic_expectation_deformed(const ComplexField& phi, double hbar, double m0) {
  if (phi.kind != WaveKind::phi_q)
    throw domain_error("kinetic_expectation_deformed: state must be phi kind");
  const auto d = detail::deformed_derivative_values(phi.grid, phi.values, 4);
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(d[i]);
  return hbar * hbar / (2.0 * m0) * q_integral(phi.grid, w);
}

// <T'> in the variable-mass picture: (hbar^2/2) integral |psi'|^2 / m(x) dx.
inline double kinetic_expectation_pdm(const ComplexField& psi, double hbar, double m0) {
  if (psi.kind != WaveKind::psi)
    throw domain_error("kinetic_expectation_pdm: state must be psi kind");
  const SpatialGrid& g = psi.grid;
  const auto d = derivative_o4(psi.values, g.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = deformation_factor(g.params.gamma, g.node(i));
    w[i] = f * f * std::norm(d[i]) / m0;
  }
  return hbar * hbar / 2.0 * integral(g, w);
}

// <p^2> = hbar^2 integral |psi'|^2 dx (states vanishing at the edges).
inline double momentum_second_moment(const ComplexField& psi, double hbar) {
  const auto d = derivative_o4(psi.values, psi.grid.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(d[i]);
  return hbar * hbar * integral(psi.grid, w);
}

inline double mean_position(const RealField& density_field) {
  const RealField rho = detail::as_rho(density_field, "mean_position");
  std::vector<double> w(rho.grid.n_points);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rho.grid.node(i) * rho.values[i];
  return integral(rho.grid, w);
}

inline double position_variance(const RealField& density_field) {
  const RealField rho = detail::as_rho(density_field, "position_variance");
  const double mean = mean_position(rho);
  std::vector<double> w(rho.grid.n_points);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = rho.grid.node(i) - mean;
    w[i] = d * d * rho.values[i];
  }
  return integral(rho.grid, w);
}

// ---------------------------------------------------------------------------
// Cramer-Rao report.

struct FisherReport {
  double gamma = 0.0;
  double gamma_L = std::numeric_limits<double>::quiet_NaN();
  int n = 0;
  double I_pdm = 0.0;
  double I_q = 0.0;
  double I_F = 0.0;
  double mean_x = 0.0;
  double var_x = 0.0;
  double cr_q_lhs = 0.0;   // I_q * var_x
  double cr_q_rhs = 0.0;   // 1 + 2 gamma mean_x
  double margin_q = 0.0;   // lhs - rhs, must never be negative
  double cr_pdm = 0.0;     // I * var_x, may drop below 1
  double cr_std = 0.0;     // I_F * var_x
  bool deformed_bound_ok = true;
  // Closed-form context, populated by the well layer.
  double E_n = std::numeric_limits<double>::quiet_NaN();
  double L_q = std::numeric_limits<double>::quiet_NaN();
  double k_qn = std::numeric_limits<double>::quiet_NaN();
};

// Quadrature route: all report entries evaluated from a normalized density.
inline FisherReport cramer_rao_check(const RealField& density_field) {
  RealField rho = detail::as_rho(density_field, "cramer_rao_check");
  rho = normalized_density(rho);
  const RealField varrho = varrho_from_rho(rho);
  FisherReport r;
  r.gamma = rho.grid.params.gamma;
  r.I_pdm = fisher_pdm(rho);
  r.I_q = fisher_deformed(varrho);
  r.I_F = fisher_standard(rho);
  r.mean_x = mean_position(rho);
  r.var_x = position_variance(rho);
  r.cr_q_lhs = r.I_q * r.var_x;
  r.cr_q_rhs = 1.0 + 2.0 * r.gamma * r.mean_x;
  r.margin_q = r.cr_q_lhs - r.cr_q_rhs;
  r.cr_pdm = r.I_pdm * r.var_x;
  r.cr_std = r.I_F * r.var_x;
  r.deformed_bound_ok = r.margin_q >= -1e-10;
  return r;
}

}  // namespace qbohm
