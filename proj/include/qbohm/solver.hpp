#pragma once

// Bound-state solvers for the variable-mass Hamiltonian with mass profile
// m(x) = m0/(1+gamma*x)^2, plus Crank-Nicolson time propagation.
//
// Two independent discretizations of the same spectrum:
//   solve_mapped  works in u = ln(1+gamma*x)/gamma, where the problem is a
//                 constant-mass one, and resamples the states back to x;
//   solve_direct  discretizes the symmetrized kinetic operator
//                 (1/2) m^{-1/4} p m^{-1/2} p m^{-1/4} on the x grid itself.

#include <lapacke.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qbohm/calculus.hpp"
#include "qbohm/field.hpp"
#include "qbohm/potential.hpp"

namespace qbohm {

inline RealField mass_profile(const SpatialGrid& grid, double m0) {
  if (!(m0 > 0.0)) throw domain_error("mass_profile: m0 must be positive");
  std::vector<double> v(grid.n_points);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = deformation_factor(grid.params.gamma, grid.node(i));
    if (f <= 0.0) throw singularity_error(grid.params.gamma, grid.node(i));
    v[i] = m0 / (f * f);
  }
  return RealField(grid, std::move(v), RealKind::mass);
}

enum class SolverRoute { mapped_constant_mass, direct_variable_mass };

struct EigenSolution {
  SolverRoute route = SolverRoute::mapped_constant_mass;
  double hbar = 1.0;
  double m0 = 1.0;
  std::vector<double> energies;     // ascending
  std::vector<ComplexField> phi;    // deformed picture, unit deformed norm
  std::vector<ComplexField> psi;    // variable-mass picture, unit dx norm
};

namespace detail {

// Lowest eigenpairs of a symmetric tridiagonal matrix.  Vectors come back
// column-wise in an n x n_states buffer.
inline void tridiag_lowest_eigenpairs(std::vector<double> diag, std::vector<double> off,
                                      std::size_t n_states, std::vector<double>& w,
                                      std::vector<double>& z) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  const lapack_int iu = static_cast<lapack_int>(n_states);
  lapack_int found = 0;
  w.assign(diag.size(), 0.0);
  z.assign(diag.size() * n_states, 0.0);
  std::vector<lapack_int> isuppz(2 * n_states);
  off.resize(diag.size());  // dstevr reads n-1 entries but wants room
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, iu,
                     0.0, &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0) throw std::runtime_error("tridiagonal eigensolver failed");
  if (found < iu) throw std::runtime_error("tridiagonal eigensolver returned too few pairs");
  w.resize(n_states);
}

struct MappedOperator {
  SpatialGrid ugrid;            // same point count as the x grid
  std::vector<double> diag;     // interior nodes only
  double off = 0.0;             // constant off-diagonal entry
};

inline MappedOperator mapped_hamiltonian(const Potential& V, const SpatialGrid& xgrid,
                                         double hbar, double m0) {
  MappedOperator op;
  op.ugrid = xgrid.to_deformed();
  const double hu = op.ugrid.spacing();
  const double kin = hbar * hbar / (2.0 * m0 * hu * hu);
  const std::size_t ni = xgrid.n_points - 2;
  op.diag.resize(ni);
  op.off = -kin;
  for (std::size_t j = 0; j < ni; ++j) {
    const double x = inverse_coordinate(op.ugrid.node(j + 1), xgrid.params.gamma);
    op.diag[j] = 2.0 * kin + V(x);
  }
  return op;
}

inline std::vector<cplx> resample_u_to_x(const std::vector<cplx>& fu, const SpatialGrid& ugrid,
                                         const SpatialGrid& xgrid) {
  std::vector<cplx> fx(xgrid.n_points);
  const double hu = ugrid.spacing();
  for (std::size_t i = 0; i < xgrid.n_points; ++i) {
    const double u = deformed_coordinate(xgrid.node(i), xgrid.params.gamma);
    fx[i] = cubic_interp(fu, ugrid.x_min, hu, u);
  }
  return fx;
}

inline std::vector<cplx> resample_x_to_u(const std::vector<cplx>& fx, const SpatialGrid& xgrid,
                                         const SpatialGrid& ugrid) {
  std::vector<cplx> fu(ugrid.n_points);
  const double hx = xgrid.spacing();
  for (std::size_t j = 0; j < ugrid.n_points; ++j) {
    const double x = inverse_coordinate(ugrid.node(j), xgrid.params.gamma);
    fu[j] = cubic_interp(fx, xgrid.x_min, hx, x);
  }
  return fu;
}

// Deterministic sign convention: first clearly nonzero sample gets a
// positive real part, so states rise from the left wall.
inline void fix_sign(std::vector<cplx>& v) {
  double peak = 0.0;
  for (const auto& c : v) peak = std::max(peak, std::abs(c));
  for (const auto& c : v) {
    if (std::abs(c) > 0.01 * peak) {
      if (c.real() < 0.0)
        for (auto& e : v) e = -e;
      return;
    }
  }
}

inline void check_solver_args(const SpatialGrid& grid, std::size_t n_states, double hbar,
                              double m0) {
  if (grid.kind != CoordinateKind::physical_x)
    throw domain_error("solver: grid must be in the physical coordinate");
  if (!(hbar > 0.0) || !(m0 > 0.0)) throw domain_error("solver: hbar and m0 must be positive");
  if (n_states == 0) throw domain_error("solver: n_states must be at least 1");
  if (n_states > grid.n_points - 2)
    throw resolution_error("solver: n_states exceeds the number of interior grid points");
}

}  // namespace detail

// Constant-mass route: eigenproblem of -(hbar^2/2m0) d^2/du^2 + V(x(u)) on
// the uniform u grid with hard walls, states resampled to the x grid.
inline EigenSolution solve_mapped(const Potential& V, const SpatialGrid& grid,
                                  std::size_t n_states, double hbar = 1.0, double m0 = 1.0) {
  detail::check_solver_args(grid, n_states, hbar, m0);
  const auto op = detail::mapped_hamiltonian(V, grid, hbar, m0);
  const std::size_t ni = op.diag.size();
  std::vector<double> w, z;
  detail::tridiag_lowest_eigenpairs(op.diag, std::vector<double>(ni - 1, op.off), n_states, w, z);

  EigenSolution sol;
  sol.route = SolverRoute::mapped_constant_mass;
  sol.hbar = hbar;
  sol.m0 = m0;
  sol.energies = w;
  for (std::size_t s = 0; s < n_states; ++s) {
    std::vector<cplx> fu(grid.n_points, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < ni; ++j) fu[j + 1] = z[j + s * ni];
    auto fx = detail::resample_u_to_x(fu, op.ugrid, grid);
    fx.front() = 0.0;
    fx.back() = 0.0;
    detail::fix_sign(fx);
    ComplexField phi(grid, std::move(fx), WaveKind::phi_q);
    phi = normalized(phi);
    sol.psi.push_back(phi_to_psi(phi));
    sol.phi.push_back(std::move(phi));
  }
  return sol;
}

// Direct route: symmetric second-order discretization of the variable-mass
// kinetic operator on the x grid, with the inverse root mass evaluated at
// cell midpoints so the matrix stays tridiagonal and symmetric.
inline EigenSolution solve_direct(const Potential& V, const SpatialGrid& grid,
                                  std::size_t n_states, double hbar = 1.0, double m0 = 1.0) {
  detail::check_solver_args(grid, n_states, hbar, m0);
  const double h = grid.spacing();
  const double gamma = grid.params.gamma;
  const std::size_t n = grid.n_points, ni = n - 2;
  const double inv_m0_quarter = 1.0 / std::pow(m0, 0.25);
  const double inv_m0_half = 1.0 / std::sqrt(m0);

  // a[i] = m(x_i)^{-1/4} at nodes, b[i] = m^{-1/2} at the midpoint right of node i.
  std::vector<double> a(n), b(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = std::sqrt(deformation_factor(gamma, grid.node(i))) * inv_m0_quarter;
  for (std::size_t i = 0; i + 1 < n; ++i)
    b[i] = deformation_factor(gamma, 0.5 * (grid.node(i) + grid.node(i + 1))) * inv_m0_half;

  const double kin = hbar * hbar / (2.0 * h * h);
  std::vector<double> diag(ni), off(ni - 1);
  for (std::size_t i = 1; i + 1 < n; ++i)
    diag[i - 1] = kin * a[i] * a[i] * (b[i] + b[i - 1]) + V(grid.node(i));
  for (std::size_t i = 1; i + 2 < n; ++i) off[i - 1] = -kin * a[i] * a[i + 1] * b[i];

  std::vector<double> w, z;
  detail::tridiag_lowest_eigenpairs(diag, off, n_states, w, z);

  EigenSolution sol;
  sol.route = SolverRoute::direct_variable_mass;
  sol.hbar = hbar;
  sol.m0 = m0;
  sol.energies = w;
  for (std::size_t s = 0; s < n_states; ++s) {
    std::vector<cplx> fx(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < ni; ++i) fx[i + 1] = z[i + s * ni];
    detail::fix_sign(fx);
    ComplexField psi(grid, std::move(fx), WaveKind::psi);
    psi = normalized(psi);
    sol.phi.push_back(psi_to_phi(psi));
    sol.psi.push_back(std::move(psi));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Crank-Nicolson propagation of the deformed-picture equation.  The state is
// advanced on the uniform u grid (where the scheme is exactly unitary in the
// discrete deformed norm) and stored slices are resampled to the input grid.

struct PropagationResult {
  std::vector<double> times;
  std::vector<ComplexField> phi;   // deformed picture, one per stored slice
  std::vector<double> q_norms;     // deformed norm of each stored slice
};

inline PropagationResult propagate(const ComplexField& phi0, const Potential& V, double dt,
                                   std::size_t n_steps, double hbar = 1.0, double m0 = 1.0,
                                   std::size_t store_every = 1) {
  if (phi0.kind != WaveKind::phi_q) throw domain_error("propagate: state must be phi kind");
  if (phi0.grid.kind != CoordinateKind::physical_x)
    throw domain_error("propagate: state must live on a physical grid");
  if (!(dt > 0.0) || n_steps == 0) throw domain_error("propagate: need dt > 0 and n_steps >= 1");
  if (!(hbar > 0.0) || !(m0 > 0.0)) throw domain_error("propagate: hbar and m0 must be positive");
  if (store_every == 0) store_every = 1;

  const auto op = detail::mapped_hamiltonian(V, phi0.grid, hbar, m0);
  const std::size_t n = phi0.grid.n_points, ni = n - 2;
  std::vector<cplx> fu = detail::resample_x_to_u(phi0.values, phi0.grid, op.ugrid);
  fu.front() = 0.0;
  fu.back() = 0.0;

  const cplx ilam = cplx{0.0, dt / (2.0 * hbar)};
  std::vector<cplx> adiag(ni), bdiag(ni);
  for (std::size_t j = 0; j < ni; ++j) {
    adiag[j] = 1.0 + ilam * op.diag[j];
    bdiag[j] = 1.0 - ilam * op.diag[j];
  }
  const cplx aoff = ilam * op.off, boff = -ilam * op.off;
  const std::vector<cplx> lower(ni - 1, aoff), upper(ni - 1, aoff);

  PropagationResult out;
  auto store = [&](double t, const std::vector<cplx>& interior) {
    std::vector<cplx> full(n, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < ni; ++j) full[j + 1] = interior[j];
    auto fx = detail::resample_u_to_x(full, op.ugrid, phi0.grid);
    fx.front() = 0.0;
    fx.back() = 0.0;
    ComplexField slice(phi0.grid, std::move(fx), WaveKind::phi_q);
    out.q_norms.push_back(norm_sq(slice));
    out.times.push_back(t);
    out.phi.push_back(std::move(slice));
  };

  std::vector<cplx> state(fu.begin() + 1, fu.end() - 1), rhs(ni);
  store(0.0, state);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    for (std::size_t j = 0; j < ni; ++j) {
      rhs[j] = bdiag[j] * state[j];
      if (j > 0) rhs[j] += boff * state[j - 1];
      if (j + 1 < ni) rhs[j] += boff * state[j + 1];
    }
    solve_tridiagonal(adiag, lower, upper, rhs);
    state.swap(rhs);
    if (k % store_every == 0 || k == n_steps) store(static_cast<double>(k) * dt, state);
  }
  return out;
}

}  // namespace qbohm
