#pragma once

// Test-side oracles, independent of the library's quadrature/stencil
// machinery: composite 10-point Gauss-Legendre integration and a
// deterministic generator of smooth random densities.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qbohm/field.hpp"

namespace oracle {

// Composite Gauss-Legendre, 10 points per panel; effectively exact for the
// smooth integrands used in the tests.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
  static const double xs[5] = {0.14887433898163121088482600, 0.43339539412924719079926594,
                               0.67940956829902440623432736, 0.86506336668898451073209668,
                               0.97390652851717172007796401};
  static const double ws[5] = {0.29552422471475287017389299, 0.26926671930999635509122692,
                               0.21908636251598204399553493, 0.14945134915058059314577633,
                               0.06667134430868813759356881};
  const double hp = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * hp, half = 0.5 * hp;
    double acc = 0.0;
    for (int i = 0; i < 5; ++i)
      acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    total += acc * half;
  }
  return total;
}

// Uniform double in [lo, hi) from the raw engine, bypassing
// std::uniform_real_distribution so sequences are implementation-agnostic.
inline double uniform(std::mt19937& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967296.0);
}

struct GaussianMixture {
  std::vector<double> a, c, s;

  double amplitude(double x) const {
    double v = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double t = (x - c[j]) / s[j];
      v += a[j] * std::exp(-0.5 * t * t);
    }
    return v;
  }

  double density(double x) const {
    const double v = amplitude(x);
    return v * v;
  }
};

// Mixture of four narrow Gaussians centred well inside [0, 1]; the squared
// amplitude decays to ~1e-49 at the edges, so boundary terms vanish for all
// identities under test.  Sign changes of the amplitude give the density
// genuine interior zeros.
inline GaussianMixture random_mixture(std::uint32_t seed) {
  std::mt19937 rng(seed);
  GaussianMixture m;
  for (int j = 0; j < 4; ++j) {
    double amp = uniform(rng, 0.3, 1.0);
    if (rng() % 2 == 0) amp = -amp;
    m.a.push_back(amp);
    m.c.push_back(uniform(rng, 0.40, 0.60));
    m.s.push_back(uniform(rng, 0.035, 0.060));
  }
  return m;
}

// Normalized density field on [0, 1] sampled from a seeded mixture.
inline qbohm::RealField random_density(std::uint32_t seed, double gamma, std::size_t n_points) {
  const GaussianMixture mix = random_mixture(seed);
  const double total = integrate([&](double x) { return mix.density(x); }, 0.0, 1.0);
  qbohm::SpatialGrid grid(0.0, 1.0, n_points, qbohm::DeformationParams::from_gamma(gamma));
  return qbohm::RealField::sample(
      grid, [&](double x) { return mix.density(x) / total; }, qbohm::RealKind::rho);
}

}  // namespace oracle
