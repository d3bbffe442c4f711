#pragma once

// Field-level deformed calculus: the derivative D = (1+gamma*x) d/dx, its
// square, and integrals against dx or the deformed measure dx/(1+gamma*x).

#include <complex>
#include <vector>

#include "qbohm/field.hpp"
#include "qbohm/numerics.hpp"

namespace qbohm {

namespace detail {

// D f on the grid's own coordinate: multiply the x-derivative by the factor
// on a physical grid; on a u-grid D is plain d/du already.
template <typename T>
std::vector<T> deformed_derivative_values(const SpatialGrid& g, const std::vector<T>& v,
                                          int order = 2) {
  std::vector<T> d = order >= 4 ? derivative_o4(v, g.spacing()) : derivative_o2(v, g.spacing());
  if (g.kind == CoordinateKind::physical_x && g.params.deformed())
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] *= deformation_factor(g.params.gamma, g.node(i));
  return d;
}

// D^2 f = (1+gamma*x)^2 f'' + gamma (1+gamma*x) f' on a physical grid.
template <typename T>
std::vector<T> deformed_second_derivative_values(const SpatialGrid& g, const std::vector<T>& v) {
  const double h = g.spacing();
  if (g.kind == CoordinateKind::deformed_u || !g.params.deformed())
    return second_derivative_o2(v, h);
  std::vector<T> d1 = derivative_o2(v, h);
  std::vector<T> d2 = second_derivative_o2(v, h);
  const double gamma = g.params.gamma;
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const double factor = deformation_factor(gamma, g.node(i));
    d2[i] = factor * factor * d2[i] + gamma * factor * d1[i];
  }
  return d2;
}

}  // namespace detail

inline RealField deformed_derivative(const RealField& f, int order = 2) {
  return RealField(f.grid, detail::deformed_derivative_values(f.grid, f.values, order),
                   RealKind::generic);
}

inline ComplexField deformed_derivative(const ComplexField& f, int order = 2) {
  return ComplexField(f.grid, detail::deformed_derivative_values(f.grid, f.values, order), f.kind);
}

inline RealField deformed_second_derivative(const RealField& f) {
  return RealField(f.grid, detail::deformed_second_derivative_values(f.grid, f.values),
                   RealKind::generic);
}

inline ComplexField deformed_second_derivative(const ComplexField& f) {
  return ComplexField(f.grid, detail::deformed_second_derivative_values(f.grid, f.values), f.kind);
}

// Integral of f dx.
template <typename T>
T integral(const SpatialGrid& g, const std::vector<T>& v) {
  return simpson(v, g.spacing());
}

inline double integral(const RealField& f) { return integral(f.grid, f.values); }

// Integral against the deformed measure dx/(1+gamma*x); on a u-grid the
// measure is already flat.
template <typename T>
T q_integral(const SpatialGrid& g, const std::vector<T>& v) {
  if (g.kind == CoordinateKind::deformed_u || !g.params.deformed()) return simpson(v, g.spacing());
  std::vector<T> w(v);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] /= deformation_factor(g.params.gamma, g.node(i));
  return simpson(w, g.spacing());
}

inline double q_integral(const RealField& f) { return q_integral(f.grid, f.values); }

inline double norm_sq(const ComplexField& f) {
  std::vector<double> a(f.grid.n_points);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::norm(f.values[i]);
  return f.kind == WaveKind::psi ? integral(f.grid, a) : q_integral(f.grid, a);
}

// Scales the field so its picture-appropriate norm is one.
inline ComplexField normalized(const ComplexField& f) {
  const double n2 = norm_sq(f);
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw domain_error("normalized: field has non-positive or non-finite norm");
  ComplexField out = f;
  const double s = 1.0 / std::sqrt(n2);
  for (auto& v : out.values) v *= s;
  return out;
}

// Normalizes a density under its own measure: dx for rho, dx/(1+gamma*x)
// for varrho_q.
inline RealField normalized_density(const RealField& f) {
  const double total = f.kind == RealKind::varrho_q ? q_integral(f) : integral(f);
  if (!(total > 0.0) || !std::isfinite(total))
    throw domain_error("normalized_density: non-positive or non-finite total");
  RealField out = f;
  for (auto& v : out.values) v /= total;
  return out;
}

}  // namespace qbohm
