#pragma once

// Raw finite-difference stencils, quadrature rules and interpolation on
// uniformly sampled data.  Everything here works on plain vectors; the
// field-level wrappers live in calculus.hpp.

#include <complex>
#include <cstddef>
#include <vector>

#include "qbohm/errors.hpp"

namespace qbohm {

// First derivative, second order: central in the interior, one-sided
// three-point stencils at the two ends.
template <typename T>
std::vector<T> derivative_o2(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw resolution_error("derivative_o2: need at least 3 points");
  std::vector<T> d(n);
  const double inv2h = 1.0 / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2h;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  return d;
}

// Second derivative, second order, one-sided four-point stencils at the ends.
template <typename T>
std::vector<T> second_derivative_o2(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 4) throw resolution_error("second_derivative_o2: need at least 4 points");
  std::vector<T> d(n);
  const double invh2 = 1.0 / (h * h);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * invh2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * invh2;
  return d;
}

// First derivative, fourth order: five-point central stencil inside, biased
// five-point stencils on the two points next to each end.
template <typename T>
std::vector<T> derivative_o4(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw resolution_error("derivative_o4: need at least 5 points");
  std::vector<T> d(n);
  const double c = 1.0 / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * c;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) * c;
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * c;
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * c;
  return d;
}

// Second derivative, fourth order: five-point central stencil inside,
// biased six-point stencils near the ends.
template <typename T>
std::vector<T> second_derivative_o4(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 6) throw resolution_error("second_derivative_o4: need at least 6 points");
  std::vector<T> d(n);
  const double c = 1.0 / (12.0 * h * h);
  d[0] = (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) * c;
  d[1] = (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) * c;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) * c;
  d[n - 2] = (10.0 * f[n - 1] - 15.0 * f[n - 2] - 4.0 * f[n - 3] + 14.0 * f[n - 4] -
              6.0 * f[n - 5] + f[n - 6]) * c;
  d[n - 1] = (45.0 * f[n - 1] - 154.0 * f[n - 2] + 214.0 * f[n - 3] - 156.0 * f[n - 4] +
              61.0 * f[n - 5] - 10.0 * f[n - 6]) * c;
  return d;
}

// Composite Simpson rule.  An odd interval count is closed with one 3/8
// panel at the right end, keeping fourth-order accuracy throughout.
template <typename T>
T simpson(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) throw resolution_error("simpson: need at least 3 points");
  const std::size_t intervals = n - 1;
  std::size_t m = intervals;           // intervals handled by plain Simpson
  T tail{};
  if (intervals % 2 != 0) {
    if (n < 4) throw resolution_error("simpson: need at least 4 points for odd interval count");
    m = intervals - 3;
    const std::size_t k = n - 4;
    tail = (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]) * (3.0 * h / 8.0);
  }
  T acc{};
  if (m > 0) {
    acc = f[0] + f[m];
    for (std::size_t i = 1; i < m; i += 2) acc += 4.0 * f[i];
    for (std::size_t i = 2; i < m; i += 2) acc += 2.0 * f[i];
    acc *= h / 3.0;
  }
  return acc + tail;
}

// Cumulative integral from the left end, fourth order: each interval is
// integrated with the four-point interpolatory rule through its neighbours.
template <typename T>
std::vector<T> cumulative_integral(const std::vector<T>& f, double h) {
  const std::size_t n = f.size();
  if (n < 4) throw resolution_error("cumulative_integral: need at least 4 points");
  std::vector<T> c(n);
  c[0] = T{};
  const double w = h / 24.0;
  c[1] = c[0] + (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) * w;
  for (std::size_t i = 1; i + 2 < n; ++i)
    c[i + 1] = c[i] + (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) * w;
  c[n - 1] = c[n - 2] + (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) * w;
  return c;
}

// Cubic (four-point Lagrange) interpolation of uniformly spaced samples,
// clamped so queries in the first/last cell use the boundary stencil.
template <typename T>
T cubic_interp(const std::vector<T>& f, double x0, double h, double x) {
  const std::size_t n = f.size();
  if (n < 4) throw resolution_error("cubic_interp: need at least 4 points");
  double s = (x - x0) / h;
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(s) - 1;  // left index of 4-point window
  if (i < 0) i = 0;
  if (i > static_cast<std::ptrdiff_t>(n) - 4) i = static_cast<std::ptrdiff_t>(n) - 4;
  const double t = s - static_cast<double>(i);  // in [.., ..], relative to window start
  const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return w0 * f[i] + w1 * f[i + 1] + w2 * f[i + 2] + w3 * f[i + 3];
}

// Solves a complex tridiagonal system in place (Thomas algorithm).
// diag/upper/lower are the matrix bands, rhs is overwritten with the solution.
inline void solve_tridiagonal(std::vector<std::complex<double>> diag,
                              const std::vector<std::complex<double>>& lower,
                              const std::vector<std::complex<double>>& upper,
                              std::vector<std::complex<double>>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const std::complex<double> w = lower[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

}  // namespace qbohm
