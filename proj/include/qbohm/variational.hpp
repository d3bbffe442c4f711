#pragma once

// Field-theoretic layer: Lagrangian densities in the polar variables, total
// energies computed three independent ways per picture, and the residuals of
// the canonical field equations.

#include <cmath>
#include <vector>

#include "qbohm/bohmian.hpp"
#include "qbohm/calculus.hpp"
#include "qbohm/field.hpp"
#include "qbohm/fisher.hpp"
#include "qbohm/potential.hpp"

namespace qbohm {

namespace detail {

// (D s)^2-style gradient term of a density, evaluated through the signed
// square root so the integrand stays finite across nodes.  Returns the
// values of (d sqrt/dx)^2 on the grid.
inline std::vector<double> amplitude_gradient_sq(const RealField& density_field) {
  const RealField amp = signed_sqrt(density_field);
  const auto d = derivative_o4(amp.values, density_field.grid.spacing());
  std::vector<double> w(d.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = d[i] * d[i];
  return w;
}

// Kinetic phase term (D S)^2 rho, with stencil-poisoned (NaN) phase points
// contributing zero; the density vanishes there, so the continuum integrand
// does too.
inline std::vector<double> phase_kinetic_term(const RealField& density, const RealField& phase,
                                              bool deformed_derivative_form) {
  const SpatialGrid& g = density.grid;
  const auto ds = deformed_derivative_form
                      ? detail::deformed_derivative_values(g, phase.values)
                      : derivative_o2(phase.values, g.spacing());
  std::vector<double> w(g.n_points);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::isnan(ds[i]) ? 0.0 : ds[i] * ds[i] * density.values[i];
  return w;
}

}  // namespace detail

// Deformed-picture Lagrangian density
//   [dS/dt + (D S)^2/2m0 + V] varrho + (hbar^2/8m0) (D varrho)^2/varrho,
// with the last term written through the signed amplitude.  dsdt may be a
// constant (stationary states: -E).
inline RealField lagrangian_density_deformed(const RealField& varrho_field, const RealField& phase,
                                             const RealField& dsdt, const Potential& V,
                                             double hbar, double m0) {
  const RealField varrho = detail::as_varrho(varrho_field, "lagrangian_density_deformed");
  const SpatialGrid& g = varrho.grid;
  auto kin = detail::phase_kinetic_term(varrho, phase, true);
  const auto grad = detail::amplitude_gradient_sq(varrho);
  std::vector<double> w(g.n_points);
  const double gamma = g.params.gamma;
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double x = g.node(i);
    const double f = deformation_factor(gamma, x);
    const double dtS = std::isnan(dsdt.values[i]) ? 0.0 : dsdt.values[i];
    w[i] = (dtS + V(x)) * varrho.values[i] + kin[i] / (2.0 * m0) +
           hbar * hbar / (8.0 * m0) * 4.0 * f * f * grad[i];
  }
  return RealField(g, std::move(w), RealKind::generic);
}

inline RealField lagrangian_density_deformed(const RealField& varrho, const RealField& phase,
                                             double dsdt, const Potential& V, double hbar,
                                             double m0) {
  return lagrangian_density_deformed(
      varrho, phase, RealField::sample(varrho.grid, [dsdt](double) { return dsdt; }), V, hbar, m0);
}

// Variable-mass picture Lagrangian density
//   [dS/dt + (S')^2/2m(x) + V - hbar^2 gamma^2/8m0] rho + (hbar^2/8m(x)) (rho')^2/rho.
// The constant shift belongs inside the bracket: with it the density's
// variation reproduces the Hamilton-Jacobi equation with the full quantum
// potential, and the action agrees with the deformed picture.
inline RealField lagrangian_density_standard(const RealField& rho_field, const RealField& phase,
                                             const RealField& dsdt, const Potential& V,
                                             double hbar, double m0) {
  const RealField rho = detail::as_rho(rho_field, "lagrangian_density_standard");
  const SpatialGrid& g = rho.grid;
  auto kin = detail::phase_kinetic_term(rho, phase, false);
  const auto grad = detail::amplitude_gradient_sq(rho);
  const double gamma = g.params.gamma;
  const double shift = -hbar * hbar * gamma * gamma / (8.0 * m0);
  std::vector<double> w(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    const double x = g.node(i);
    const double f = deformation_factor(gamma, x);
    const double inv_m = f * f / m0;
    const double dtS = std::isnan(dsdt.values[i]) ? 0.0 : dsdt.values[i];
    w[i] = (dtS + V(x) + shift) * rho.values[i] + 0.5 * inv_m * kin[i] +
           hbar * hbar / 8.0 * inv_m * 4.0 * grad[i];
  }
  return RealField(g, std::move(w), RealKind::generic);
}

inline RealField lagrangian_density_standard(const RealField& rho, const RealField& phase,
                                             double dsdt, const Potential& V, double hbar,
                                             double m0) {
  return lagrangian_density_standard(
      rho, phase, RealField::sample(rho.grid, [dsdt](double) { return dsdt; }), V, hbar, m0);
}

// Spatial action integrals (per unit time for stationary data): deformed
// measure for the deformed picture, plain dx for the other.
inline double action_integral_deformed(const RealField& lagrangian) {
  return q_integral(lagrangian);
}

inline double action_integral_standard(const RealField& lagrangian) {
  return integral(lagrangian.grid, lagrangian.values);
}

// ---------------------------------------------------------------------------
// Energies, three forms per picture.  All three must agree for eigenstates.

struct EnergyForms {
  double sandwich = 0.0;   // matrix element of the Hamiltonian
  double gradient = 0.0;   // integrated-by-parts form
  double polar = 0.0;      // polar variables plus Fisher term
};

inline EnergyForms energy_forms_deformed(const ComplexField& phi, const Potential& V, double hbar,
                                         double m0) {
  if (phi.kind != WaveKind::phi_q)
    throw domain_error("energy_forms_deformed: state must be phi kind");
  const SpatialGrid& g = phi.grid;
  EnergyForms e;

  // <phi| -(hbar^2/2m0) D^2 + V |phi> against the deformed measure.
  {
    const auto d1 = derivative_o4(phi.values, g.spacing());
    const auto d2 = second_derivative_o4(phi.values, g.spacing());
    std::vector<double> w(g.n_points);
    const double gamma = g.params.gamma;
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double x = g.node(i);
      const double f = deformation_factor(gamma, x);
      const cplx dd = g.kind == CoordinateKind::physical_x && g.params.deformed()
                          ? f * f * d2[i] + gamma * f * d1[i]
                          : d2[i];
      const cplx h_phi = -hbar * hbar / (2.0 * m0) * dd + V(x) * phi.values[i];
      w[i] = std::real(std::conj(phi.values[i]) * h_phi);
    }
    e.sandwich = q_integral(g, w);
  }

  // (hbar^2/2m0) |D phi|^2 + V |phi|^2.
  {
    const auto d = detail::deformed_derivative_values(g, phi.values, 4);
    std::vector<double> w(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i)
      w[i] = hbar * hbar / (2.0 * m0) * std::norm(d[i]) +
             V(g.node(i)) * std::norm(phi.values[i]);
    e.gradient = q_integral(g, w);
  }

  // [(D S)^2/2m0 + V] varrho integrated, plus hbar^2 I_q / 8 m0.
  {
    const auto polar = polar_decompose(phi, hbar);
    auto kin = detail::phase_kinetic_term(polar.amplitude_sq, polar.phase, true);
    std::vector<double> w(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i)
      w[i] = kin[i] / (2.0 * m0) + V(g.node(i)) * polar.amplitude_sq.values[i];
    e.polar = q_integral(g, w) +
              hbar * hbar / (8.0 * m0) * fisher_deformed(polar.amplitude_sq);
  }
  return e;
}

inline EnergyForms energy_forms_standard(const ComplexField& psi, const Potential& V, double hbar,
                                         double m0) {
  if (psi.kind != WaveKind::psi)
    throw domain_error("energy_forms_standard: state must be psi kind");
  const SpatialGrid& g = psi.grid;
  const double gamma = g.params.gamma;
  const double shift = -hbar * hbar * gamma * gamma / (8.0 * m0);
  EnergyForms e;

  // Matrix element of the expanded variable-mass Hamiltonian
  //   -(hbar^2 f^2/2m0) psi'' - (hbar^2 gamma f/m0) psi' + shift psi + V psi.
  {
    const auto d1 = derivative_o4(psi.values, g.spacing());
    const auto d2 = second_derivative_o4(psi.values, g.spacing());
    std::vector<double> w(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double x = g.node(i);
      const double f = deformation_factor(gamma, x);
      const cplx h_psi = -hbar * hbar * f * f / (2.0 * m0) * d2[i] -
                         hbar * hbar * gamma * f / m0 * d1[i] +
                         (shift + V(x)) * psi.values[i];
      w[i] = std::real(std::conj(psi.values[i]) * h_psi);
    }
    e.sandwich = integral(g, w);
  }

  // (hbar^2/2m(x)) |psi'|^2 + (V + shift) |psi|^2.
  {
    const auto d = derivative_o4(psi.values, g.spacing());
    std::vector<double> w(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double f = deformation_factor(gamma, g.node(i));
      w[i] = hbar * hbar * f * f / (2.0 * m0) * std::norm(d[i]) +
             (V(g.node(i)) + shift) * std::norm(psi.values[i]);
    }
    e.gradient = integral(g, w);
  }

  // [(S')^2/2m(x) + V + shift] rho integrated, plus hbar^2 I / 8 m0.
  {
    const auto polar = polar_decompose(psi, hbar);
    auto kin = detail::phase_kinetic_term(polar.amplitude_sq, polar.phase, false);
    std::vector<double> w(g.n_points);
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double f = deformation_factor(gamma, g.node(i));
      w[i] = 0.5 * f * f / m0 * kin[i] +
             (V(g.node(i)) + shift) * polar.amplitude_sq.values[i];
    }
    e.polar = integral(g, w) + hbar * hbar / (8.0 * m0) * fisher_pdm(polar.amplitude_sq);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Canonical field equations in the deformed picture, obtained by varying the
// energy functional with respect to the conjugate pair (varrho, S):
//   d varrho/dt = dH/dS  = -D(varrho D S / m0),
//   dS/dt       = -dH/dvarrho = -[(D S)^2/2m0 + V + Q].
// These are the continuity and phase equations of the trajectory picture, so
// the residuals are evaluated with the same kernels; only the derivation
// differs.  Returns pointwise max-over-time residuals of the two equations,
// O(dt^2 + h^2) on smooth data.

struct HamiltonResiduals {
  RealField density_equation;
  RealField phase_equation;
};

inline HamiltonResiduals hamilton_field_residuals(const std::vector<ComplexField>& phi_slices,
                                                  const Potential& V, double dt, double hbar,
                                                  double m0) {
  return HamiltonResiduals{continuity_residual(phi_slices, dt, hbar, m0),
                           hamilton_jacobi_residual(phi_slices, V, dt, hbar, m0)};
}

}  // namespace qbohm
