#pragma once

// Pilot-wave layer: probability currents in both pictures, continuity and
// Hamilton-Jacobi residuals, the quantum potential and its three-part split,
// and the matching classical quantities (reduced action, trajectories).

#include <cmath>
#include <limits>
#include <vector>

#include "qbohm/calculus.hpp"
#include "qbohm/field.hpp"
#include "qbohm/potential.hpp"

namespace qbohm {

// Deformed-picture current Re{phi* (hbar/i) D (phi/m0)}.
inline RealField current_density_deformed(const ComplexField& phi, double hbar, double m0) {
  if (phi.kind != WaveKind::phi_q)
    throw domain_error("current_density_deformed: state must be phi kind");
  std::vector<cplx> w(phi.values);
  for (auto& v : w) v /= m0;
  const auto dw = detail::deformed_derivative_values(phi.grid, w);
  std::vector<double> j(phi.grid.n_points);
  for (std::size_t i = 0; i < j.size(); ++i)
    j[i] = hbar * std::imag(std::conj(phi.values[i]) * dw[i]);
  return RealField(phi.grid, std::move(j), RealKind::current);
}

// Variable-mass picture current Re{psi* (hbar/i) d/dx (psi/m(x))}.  For the
// corresponding states the two pictures carry the same current.
inline RealField current_density_standard(const ComplexField& psi, double hbar, double m0) {
  if (psi.kind != WaveKind::psi)
    throw domain_error("current_density_standard: state must be psi kind");
  if (psi.grid.kind != CoordinateKind::physical_x)
    throw domain_error("current_density_standard: state must live on a physical grid");
  const double gamma = psi.grid.params.gamma;
  std::vector<cplx> w(psi.grid.n_points);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double f = deformation_factor(gamma, psi.grid.node(i));
    w[i] = psi.values[i] * (f * f / m0);
  }
  const auto dw = derivative_o2(w, psi.grid.spacing());
  std::vector<double> j(psi.grid.n_points);
  for (std::size_t i = 0; i < j.size(); ++i)
    j[i] = hbar * std::imag(std::conj(psi.values[i]) * dw[i]);
  return RealField(psi.grid, std::move(j), RealKind::current);
}

// Pointwise maximum over interior time slices of |d(varrho)/dt + D J|,
// with the time derivative taken centrally between neighbouring slices.
inline RealField continuity_residual(const std::vector<ComplexField>& phi_slices, double dt,
                                     double hbar, double m0) {
  if (phi_slices.size() < 3)
    throw domain_error("continuity_residual: need at least three time slices");
  const SpatialGrid& g = phi_slices.front().grid;
  std::vector<double> worst(g.n_points, 0.0);
  std::vector<RealField> dens;
  dens.reserve(phi_slices.size());
  for (const auto& s : phi_slices) {
    if (!(s.grid == g)) throw domain_error("continuity_residual: slices must share a grid");
    dens.push_back(density(s));
  }
  for (std::size_t t = 1; t + 1 < phi_slices.size(); ++t) {
    const RealField j = current_density_deformed(phi_slices[t], hbar, m0);
    const auto dj = detail::deformed_derivative_values(g, j.values);
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double dvdt = (dens[t + 1].values[i] - dens[t - 1].values[i]) / (2.0 * dt);
      worst[i] = std::max(worst[i], std::abs(dvdt + dj[i]));
    }
  }
  return RealField(g, std::move(worst), RealKind::generic);
}

// ---------------------------------------------------------------------------
// Quantum potential.

// Q = -(hbar^2/2m0) (D^2 s)/s with s the signed square root of varrho_q.
// Entries where the amplitude is below the node threshold are NaN.
inline RealField quantum_potential(const RealField& density_field, double hbar, double m0) {
  RealField varrho = density_field;
  if (varrho.kind == RealKind::rho) varrho = varrho_from_rho(varrho);
  if (varrho.kind != RealKind::varrho_q)
    throw domain_error("quantum_potential: input must be a density");
  const SpatialGrid& g = varrho.grid;
  const RealField s = signed_sqrt(varrho);
  const double h = g.spacing();
  const auto d1 = derivative_o4(s.values, h);
  const auto d2 = second_derivative_o4(s.values, h);
  double peak = 0.0;
  for (double v : s.values) peak = std::max(peak, std::abs(v));
  const double cut = kNodeThreshold * peak;
  const double gamma = g.params.gamma;
  const double pref = -hbar * hbar / (2.0 * m0);
  std::vector<double> q(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) {
    if (std::abs(s.values[i]) < cut) {
      q[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double dd;
    if (g.kind == CoordinateKind::physical_x && g.params.deformed()) {
      const double f = deformation_factor(gamma, g.node(i));
      dd = f * f * d2[i] + gamma * f * d1[i];
    } else {
      dd = d2[i];
    }
    q[i] = pref * dd / s.values[i];
  }
  return RealField(g, std::move(q), RealKind::quantum_potential);
}

inline RealField quantum_potential(const ComplexField& phi, double hbar, double m0) {
  if (phi.kind != WaveKind::phi_q) throw domain_error("quantum_potential: state must be phi kind");
  return quantum_potential(density(phi), hbar, m0);
}

struct QuantumPotentialSplit {
  RealField mass_weighted;   // textbook Bohm term with m(x) in place of m0
  RealField mass_gradient;   // term driven by d(1/m)/dx
  RealField constant_shift;  // -hbar^2 gamma^2 / 8 m0 everywhere
};

// Three-part split computed from the plain density rho; the parts sum to
// the deformed quantum potential of (1+gamma*x) rho.
inline QuantumPotentialSplit quantum_potential_split(const RealField& rho_field, double hbar,
                                                     double m0) {
  RealField rho = rho_field;
  if (rho.kind == RealKind::varrho_q) rho = rho_from_varrho(rho);
  if (rho.kind != RealKind::rho)
    throw domain_error("quantum_potential_split: input must be a density");
  const SpatialGrid& g = rho.grid;
  if (g.kind != CoordinateKind::physical_x)
    throw domain_error("quantum_potential_split: density must live on a physical grid");
  const RealField r = signed_sqrt(rho);
  const double h = g.spacing();
  const auto d1 = derivative_o4(r.values, h);
  const auto d2 = second_derivative_o4(r.values, h);
  double peak = 0.0;
  for (double v : r.values) peak = std::max(peak, std::abs(v));
  const double cut = kNodeThreshold * peak;
  const double gamma = g.params.gamma;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> q1(g.n_points), q2(g.n_points),
      q3(g.n_points, -hbar * hbar * gamma * gamma / (8.0 * m0));
  for (std::size_t i = 0; i < g.n_points; ++i) {
    if (std::abs(r.values[i]) < cut) {
      q1[i] = q2[i] = nan;
      continue;
    }
    const double f = deformation_factor(gamma, g.node(i));
    // 1/m = f^2/m0, so d(1/m)/dx = 2 gamma f / m0; rho'/rho = 2 r'/r.
    q1[i] = -hbar * hbar * f * f / (2.0 * m0) * d2[i] / r.values[i];
    q2[i] = -hbar * hbar * gamma * f / m0 * d1[i] / r.values[i];
  }
  return QuantumPotentialSplit{RealField(g, std::move(q1), RealKind::quantum_potential),
                               RealField(g, std::move(q2), RealKind::quantum_potential),
                               RealField(g, std::move(q3), RealKind::quantum_potential)};
}

// ---------------------------------------------------------------------------
// Hamilton-Jacobi residuals.

// Stationary case: the phase is S = -E t, so the equation collapses to
// V + Q - E = 0 wherever the density is clear of nodes.
inline RealField hamilton_jacobi_residual_stationary(const RealField& varrho, const Potential& V,
                                                     double energy, double hbar, double m0) {
  RealField q = quantum_potential(varrho, hbar, m0);
  for (std::size_t i = 0; i < q.values.size(); ++i)
    if (!std::isnan(q.values[i])) q.values[i] += V(q.grid.node(i)) - energy;
  q.kind = RealKind::generic;
  return q;
}

// Time-dependent case: pointwise max over interior slices of
// |dS/dt + (D S)^2 / 2 m0 + V + Q|; NaN where every slice is masked.
inline RealField hamilton_jacobi_residual(const std::vector<ComplexField>& phi_slices,
                                          const Potential& V, double dt, double hbar, double m0) {
  if (phi_slices.size() < 3)
    throw domain_error("hamilton_jacobi_residual: need at least three time slices");
  const SpatialGrid& g = phi_slices.front().grid;
  std::vector<PolarDecomposition> polar;
  polar.reserve(phi_slices.size());
  for (const auto& s : phi_slices) {
    if (!(s.grid == g)) throw domain_error("hamilton_jacobi_residual: slices must share a grid");
    polar.push_back(polar_decompose(s, hbar));
  }
  align_phase_series(polar, hbar);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> worst(g.n_points, nan);
  for (std::size_t t = 1; t + 1 < polar.size(); ++t) {
    const auto ds = detail::deformed_derivative_values(g, polar[t].phase.values);
    const RealField q = quantum_potential(polar[t].amplitude_sq, hbar, m0);
    for (std::size_t i = 0; i < g.n_points; ++i) {
      if (polar[t].node_mask[i] || polar[t - 1].node_mask[i] || polar[t + 1].node_mask[i]) continue;
      // Near a moving near-node the amplitude sign convention and the unwrap
      // branch can both differ between slices, shifting the lifted phase by
      // multiples of pi hbar.  The physical change per step is far below
      // that, so take the increment from the wave ratio itself.
      const double dsdt = hbar *
                          std::arg(phi_slices[t + 1].values[i] *
                                   std::conj(phi_slices[t - 1].values[i])) /
                          (2.0 * dt);
      const double r =
          dsdt + ds[i] * ds[i] / (2.0 * m0) + V(g.node(i)) + q.values[i];
      if (std::isnan(r)) continue;
      if (std::isnan(worst[i]) || std::abs(r) > worst[i]) worst[i] = std::abs(r);
    }
  }
  return RealField(g, std::move(worst), RealKind::generic);
}

// ---------------------------------------------------------------------------
// Classical layer.

// Reduced action W(x) = integral from the left edge of sqrt(2 m(x') (E - V)).
// The same numbers solve the deformed form with constant mass against the
// deformed measure, since the integrands coincide pointwise.
inline RealField classical_action(const Potential& V, double energy, const SpatialGrid& grid,
                                  double m0) {
  if (grid.kind != CoordinateKind::physical_x)
    throw domain_error("classical_action: grid must be in the physical coordinate");
  const double gamma = grid.params.gamma;
  std::vector<double> p(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.node(i);
    const double gap = energy - V(x);
    if (gap < 0.0)
      throw domain_error("classical_action: energy below the potential (forbidden region)");
    const double f = deformation_factor(gamma, x);
    p[i] = std::sqrt(2.0 * (m0 / (f * f)) * gap);
  }
  auto w = cumulative_integral(p, grid.spacing());
  return RealField(grid, std::move(w), RealKind::generic);
}

// Local momentum dW/dx = sqrt(2 m(x)(E - V)).
inline RealField classical_momentum(const Potential& V, double energy, const SpatialGrid& grid,
                                    double m0) {
  const double gamma = grid.params.gamma;
  std::vector<double> p(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.node(i);
    const double gap = energy - V(x);
    if (gap < 0.0)
      throw domain_error("classical_momentum: energy below the potential (forbidden region)");
    const double f = deformation_factor(gamma, x);
    p[i] = std::sqrt(2.0 * (m0 / (f * f)) * gap);
  }
  return RealField(grid, std::move(p), RealKind::generic);
}

struct TrajectoryPoint {
  double t = 0.0;
  double x = 0.0;
  double v = 0.0;
  double lagrangian = 0.0;  // (1/2) m(x) v^2 - V(x)
};

// Variable-mass equation of motion m(x) a + (1/2) m'(x) v^2 = -V'(x),
// integrated with classic fourth-order Runge-Kutta.
inline std::vector<TrajectoryPoint> classical_trajectory(const Potential& V, double x0, double v0,
                                                         double dt, std::size_t n_steps, double m0,
                                                         const DeformationParams& params) {
  if (!(dt > 0.0)) throw domain_error("classical_trajectory: dt must be positive");
  const double gamma = params.gamma;
  auto accel = [&](double x, double v) {
    const double f = deformation_factor(gamma, x);
    if (f <= 0.0) throw singularity_error(gamma, x);
    const double m = m0 / (f * f);
    const double dm = -2.0 * gamma * m0 / (f * f * f);
    return (-V.derivative(x) - 0.5 * dm * v * v) / m;
  };
  auto lag = [&](double x, double v) {
    const double f = deformation_factor(gamma, x);
    return 0.5 * (m0 / (f * f)) * v * v - V(x);
  };
  std::vector<TrajectoryPoint> out;
  out.reserve(n_steps + 1);
  double x = x0, v = v0;
  out.push_back({0.0, x, v, lag(x, v)});
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double k1x = v, k1v = accel(x, v);
    const double k2x = v + 0.5 * dt * k1v, k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
    const double k3x = v + 0.5 * dt * k2v, k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
    const double k4x = v + dt * k3v, k4v = accel(x + dt * k3x, v + dt * k3v);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.push_back({static_cast<double>(k) * dt, x, v, lag(x, v)});
  }
  return out;
}

// Action accumulated along a stored trajectory (Simpson in time).
inline double trajectory_action(const std::vector<TrajectoryPoint>& traj, double dt) {
  std::vector<double> l(traj.size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = traj[i].lagrangian;
  return simpson(l, dt);
}

// Largest finite magnitude in a field; NaN entries are skipped.
inline double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values)
    if (!std::isnan(v)) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// Snapshot aggregation for serialization.

struct BohmianSnapshot {
  RealField varrho;
  RealField phase;
  RealField current;
  RealField q1, q2, q3, q_total;
  std::vector<unsigned char> node_mask;
};

inline BohmianSnapshot make_snapshot(const ComplexField& phi, double hbar, double m0) {
  if (phi.kind != WaveKind::phi_q) throw domain_error("make_snapshot: state must be phi kind");
  auto polar = polar_decompose(phi, hbar);
  auto split = quantum_potential_split(rho_from_varrho(polar.amplitude_sq), hbar, m0);
  BohmianSnapshot snap{std::move(polar.amplitude_sq),
                       std::move(polar.phase),
                       current_density_deformed(phi, hbar, m0),
                       std::move(split.mass_weighted),
                       std::move(split.mass_gradient),
                       std::move(split.constant_shift),
                       quantum_potential(phi, hbar, m0),
                       std::move(polar.node_mask)};
  return snap;
}

inline void write_snapshot_csv(std::ostream& os, const BohmianSnapshot& s) {
  const SpatialGrid& g = s.varrho.grid;
  detail::write_field_header(os, g, "snapshot");
  os << "x,varrho_q,S_q,J,Q1,Q2,Q3,Q_total,node_mask\n";
  for (std::size_t i = 0; i < g.n_points; ++i) {
    os << detail::fmt(g.node(i)) << ',' << detail::fmt(s.varrho.values[i]) << ','
       << detail::fmt(s.phase.values[i]) << ',' << detail::fmt(s.current.values[i]) << ','
       << detail::fmt(s.q1.values[i]) << ',' << detail::fmt(s.q2.values[i]) << ','
       << detail::fmt(s.q3.values[i]) << ',' << detail::fmt(s.q_total.values[i]) << ','
       << static_cast<int>(s.node_mask[i]) << '\n';
  }
}

inline void write_snapshot_csv_file(const std::string& path, const BohmianSnapshot& s) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_snapshot_csv(os, s);
}

}  // namespace qbohm
