// Usage walkthrough: Crank-Nicolson evolution of an equal-weight two-state
// superposition over one full beat period 2*pi/(E2-E1).  The deformed
// density returns to its initial shape; the deformed norm is conserved to
// machine precision.
//
//   ./demo_two_state_beat [gammaL]

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qbohm/qbohm.hpp"

int main(int argc, char** argv) {
  const double gamma_l = argc > 1 ? std::atof(argv[1]) : 0.5;
  qbohm::WellSpec w(1.0, gamma_l);
  auto grid = w.grid(801);

  auto sol = qbohm::solve_mapped(w.potential(), grid, 2);
  qbohm::ComplexField phi0 = sol.phi[0];
  for (std::size_t i = 0; i < grid.n_points; ++i) phi0.values[i] += sol.phi[1].values[i];
  phi0 = qbohm::normalized(phi0);

  const double period = 2.0 * 3.14159265358979323846 / (sol.energies[1] - sol.energies[0]);
  const std::size_t steps = 1200;
  // Store every other step: the time differences behind the continuity
  // residual need slices much closer than the beat scale.
  auto run = qbohm::propagate(phi0, w.potential(), period / steps, steps, 1.0, 1.0, 2);

  double drift = 0.0;
  for (double qn : run.q_norms) drift = std::max(drift, std::abs(qn - run.q_norms.front()));
  double revival_gap = 0.0;
  const auto& first = run.phi.front();
  const auto& last = run.phi.back();
  for (std::size_t i = 0; i < grid.n_points; ++i)
    revival_gap =
        std::max(revival_gap, std::abs(std::norm(last.values[i]) - std::norm(first.values[i])));

  std::printf("gammaL=%g, beat period %.6f, %zu steps\n", gamma_l, period, steps);
  std::printf("deformed norm drift: %.3e\n", drift);
  std::printf("density revival gap after one period: %.3e\n", revival_gap);

  // Mid-beat current density drives the continuity equation.
  const double residual =
      qbohm::max_abs(qbohm::continuity_residual(run.phi, 2.0 * period / steps, 1.0, 1.0));
  std::printf("continuity residual on stored slices: %.3e\n", residual);
  return 0;
}
