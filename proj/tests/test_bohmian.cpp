#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <sstream>

#include "qbohm/bohmian.hpp"
#include "qbohm/solver.hpp"
#include "qbohm/well.hpp"

using namespace qbohm;

namespace {

// Relative amplitude of the analytic well state n at grid node i; used to
// exclude the neighbourhood of density nodes from pointwise checks.
double rel_amp(const WellSpec& w, std::size_t n, const SpatialGrid& g, std::size_t i) {
  const double u = deformed_coordinate(g.node(i), w.params());
  return std::abs(std::sin(w.wavenumber(n) * u));
}

ComplexField two_mode_state(const EigenSolution& sol, cplx c0, cplx c1) {
  ComplexField out = sol.phi[0];
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = c0 * sol.phi[0].values[i] + c1 * sol.phi[1].values[i];
  return normalized(out);
}

}  // namespace

TEST_CASE("quantum potential of a well eigenstate equals its energy") {
  WellSpec w(1.0, 1.0);
  auto grid = w.grid(4001);
  for (std::size_t n : {1u, 2u}) {
    auto phi = sample_phi(w, n, grid);
    auto q = quantum_potential(phi, w.hbar, w.m0);
    const double e = w.energy(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      if (rel_amp(w, n, grid, i) < 1e-2) continue;
      REQUIRE(!std::isnan(q.values[i]));
      worst = std::max(worst, std::abs(q.values[i] - e));
    }
    CHECK(worst < 1e-6 * e);
  }
}

TEST_CASE("quantum potential split sums to the deformed total") {
  WellSpec w(1.0, 1.0);
  auto grid = w.grid(4001);
  auto phi = sample_phi(w, 2, grid);
  auto total = quantum_potential(phi, w.hbar, w.m0);
  auto split = quantum_potential_split(density(phi_to_psi(phi)), w.hbar, w.m0);
  const double e = w.energy(2);
  const double shift = -w.hbar * w.hbar * 1.0 / 8.0;  // gamma = 1, m0 = 1
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    CHECK(split.constant_shift.values[i] == Catch::Approx(shift).margin(1e-15));
    if (rel_amp(w, 2, grid, i) < 1e-2) continue;
    const double sum = split.mass_weighted.values[i] + split.mass_gradient.values[i] +
                       split.constant_shift.values[i];
    worst = std::max(worst, std::abs(sum - total.values[i]));
  }
  CHECK(worst < 1e-6 * e);
}

TEST_CASE("stationary Hamilton-Jacobi residual vanishes away from nodes") {
  WellSpec w(1.0, -0.5);
  auto grid = w.grid(4001);
  auto phi = sample_phi(w, 3, grid);
  const double e = w.energy(3);
  auto res = hamilton_jacobi_residual_stationary(density(phi), w.potential(), e, w.hbar, w.m0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    if (rel_amp(w, 3, grid, i) < 1e-2) continue;
    worst = std::max(worst, std::abs(res.values[i]));
  }
  CHECK(worst < 1e-6 * e);
}

TEST_CASE("both current pictures carry the same current") {
  WellSpec w(1.0, 1.0);
  auto grid = w.grid(2001);
  auto sol = solve_mapped(w.potential(), grid, 2);
  auto phi = two_mode_state(sol, 1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0)));
  auto psi = phi_to_psi(phi);
  auto jq = current_density_deformed(phi, w.hbar, w.m0);
  auto js = current_density_standard(psi, w.hbar, w.m0);
  const double scale = max_abs(jq);
  REQUIRE(scale > 1e-3);  // the mixed state really does carry current
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i)
    worst = std::max(worst, std::abs(jq.values[i] - js.values[i]));
  CHECK(worst < 1e-4 * scale);
}

TEST_CASE("real eigenstates carry no current") {
  WellSpec w(1.0, 2.0);
  auto grid = w.grid(801);
  auto phi = sample_phi(w, 2, grid);
  auto j = current_density_deformed(phi, w.hbar, w.m0);
  CHECK(max_abs(j) < 1e-12);
}

TEST_CASE("continuity residual shrinks at second order under refinement") {
  WellSpec w(1.0, 1.0);
  auto run_residual = [&](std::size_t n_points, double dt, std::size_t steps) {
    auto grid = w.grid(n_points);
    auto sol = solve_mapped(w.potential(), grid, 2);
    auto phi0 = two_mode_state(sol, std::sqrt(0.5), std::sqrt(0.5));
    auto run = propagate(phi0, w.potential(), dt, steps, w.hbar, w.m0, 1);
    for (double qn : run.q_norms) CHECK(std::abs(qn - 1.0) < 1e-9);
    return max_abs(continuity_residual(run.phi, dt, w.hbar, w.m0));
  };
  const double coarse = run_residual(801, 2.5e-4, 40);
  const double fine = run_residual(1601, 1.25e-4, 80);
  CHECK(coarse / fine > 3.2);
  CHECK(coarse / fine < 5.2);
}

TEST_CASE("time-dependent Hamilton-Jacobi residual stays small for evolving states") {
  WellSpec w(1.0, 1.0);
  auto grid = w.grid(801);
  auto sol = solve_mapped(w.potential(), grid, 2);

  // A propagated eigenstate: S is spatially flat, so the residual reduces to
  // the Cayley-energy mismatch, well below the state's energy scale.
  auto run1 = propagate(sol.phi[0], w.potential(), 2e-4, 24, w.hbar, w.m0, 1);
  auto res1 = hamilton_jacobi_residual(run1.phi, w.potential(), 2e-4, w.hbar, w.m0);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    if (rel_amp(w, 1, grid, i) < 5e-2) continue;
    REQUIRE(!std::isnan(res1.values[i]));
    worst = std::max(worst, res1.values[i]);
  }
  CHECK(worst < 1e-3 * sol.energies[0]);

  // A two-mode state: check at the point of maximal initial density, where
  // the density never collapses during the beat.
  auto phi0 = two_mode_state(sol, std::sqrt(0.5), std::sqrt(0.5));
  auto run2 = propagate(phi0, w.potential(), 2e-4, 24, w.hbar, w.m0, 1);
  auto res2 = hamilton_jacobi_residual(run2.phi, w.potential(), 2e-4, w.hbar, w.m0);
  std::size_t peak = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double d = std::norm(phi0.values[i]);
    if (d > best) {
      best = d;
      peak = i;
    }
  }
  REQUIRE(!std::isnan(res2.values[peak]));
  CHECK(res2.values[peak] < 0.05 * sol.energies[1]);
}

TEST_CASE("classical reduced action has the closed form for a flat potential") {
  const double gamma = 0.8, energy = 3.7;
  auto p = DeformationParams::from_gamma(gamma);
  SpatialGrid grid(0.0, 1.0, 2001, p);
  auto flat = Potential::callback([](double) { return 0.0; });
  auto W = classical_action(flat, energy, grid, 1.0);
  auto mom = classical_momentum(flat, energy, grid, 1.0);
  for (std::size_t i = 0; i < grid.n_points; i += 250) {
    const double x = grid.node(i);
    const double want = std::sqrt(2.0 * energy) * std::log1p(gamma * x) / gamma;
    CHECK(W.values[i] == Catch::Approx(want).margin(1e-10));
    CHECK(mom.values[i] ==
          Catch::Approx(std::sqrt(2.0 * energy) / deformation_factor(gamma, x)).margin(1e-13));
  }
  auto bump = Potential::callback([](double) { return 5.0; });
  CHECK_THROWS_AS(classical_action(bump, energy, grid, 1.0), domain_error);
}

TEST_CASE("free variable-mass trajectory matches the exponential solution") {
  const double gamma = 1.0, energy = 2.0, x0 = 0.2;
  auto params = DeformationParams::from_gamma(gamma);
  auto flat = Potential::callback([](double) { return 0.0; });
  const double c = std::sqrt(2.0 * energy);
  const double v0 = deformation_factor(gamma, x0) * c;
  const double dt = 1e-3;
  const std::size_t steps = 300;
  auto traj = classical_trajectory(flat, x0, v0, dt, steps, 1.0, params);
  REQUIRE(traj.size() == steps + 1);
  const double u0 = deformed_coordinate(x0, params);
  for (std::size_t k = 0; k <= steps; k += 60) {
    const double t = k * dt;
    const double want = inverse_coordinate(u0 + c * t, params);
    CHECK(traj[k].x == Catch::Approx(want).margin(1e-9));
    // The kinetic energy (here the full Lagrangian) is a constant of motion.
    CHECK(traj[k].lagrangian == Catch::Approx(energy).margin(1e-10));
  }
  CHECK(trajectory_action(traj, dt) ==
        Catch::Approx(energy * steps * dt).margin(1e-9));
}

TEST_CASE("snapshot aggregates the pilot-wave fields consistently") {
  WellSpec w(1.0, 1.0);
  auto grid = w.grid(1201);
  auto sol = solve_mapped(w.potential(), grid, 2);
  auto phi = two_mode_state(sol, std::sqrt(0.5), cplx(0.0, std::sqrt(0.5)));
  auto snap = make_snapshot(phi, w.hbar, w.m0);
  REQUIRE(snap.varrho.values.size() == grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    CHECK(snap.varrho.values[i] == Catch::Approx(std::norm(phi.values[i])).margin(1e-12));
    if (!snap.node_mask[i] && !std::isnan(snap.q_total.values[i]) &&
        snap.varrho.values[i] > 1e-2 * max_abs(snap.varrho)) {
      const double sum = snap.q1.values[i] + snap.q2.values[i] + snap.q3.values[i];
      CHECK(sum == Catch::Approx(snap.q_total.values[i]).margin(1e-4));
    }
  }
  std::ostringstream os;
  write_snapshot_csv(os, snap);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);  // metadata
  std::getline(is, line);
  CHECK(line == "x,varrho_q,S_q,J,Q1,Q2,Q3,Q_total,node_mask");
  std::size_t rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == grid.n_points);
}
