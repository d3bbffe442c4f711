#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "qbohm/numerics.hpp"

using namespace qbohm;

namespace {

std::vector<double> sample(double a, double b, std::size_t n, double (*f)(double)) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(a + (b - a) * i / (n - 1));
  return v;
}

// skip trims the one-sided-stencil zone at each end so interior order can be
// measured on its own.
double max_err(const std::vector<double>& got, double a, double b, double (*f)(double),
               std::size_t skip = 0) {
  double m = 0.0;
  const std::size_t n = got.size();
  for (std::size_t i = skip; i + skip < n; ++i)
    m = std::max(m, std::abs(got[i] - f(a + (b - a) * i / (n - 1))));
  return m;
}

}  // namespace

TEST_CASE("derivative stencils converge at their design order") {
  const double a = 0.0, b = 2.0;
  auto run = [&](std::size_t n, int which, std::size_t skip) {
    const double h = (b - a) / (n - 1);
    const auto f = sample(a, b, n, [](double x) { return std::exp(x); });
    std::vector<double> d;
    if (which == 1) d = derivative_o2(f, h);
    if (which == 2) d = second_derivative_o2(f, h);
    if (which == 3) d = derivative_o4(f, h);
    if (which == 4) d = second_derivative_o4(f, h);
    return max_err(d, a, b, [](double x) { return std::exp(x); }, skip);
  };
  // Error ratio on grid doubling: ~4 for the o2 stencils, ~16 for the o4,
  // measured away from the one-sided edge stencils and, for the o4 pair, on
  // grids coarse enough that truncation still dominates roundoff.
  CHECK(run(201, 1, 0) / run(401, 1, 0) == Catch::Approx(4.0).margin(0.4));
  CHECK(run(201, 2, 0) / run(401, 2, 0) == Catch::Approx(4.0).margin(0.4));
  CHECK(run(51, 3, 3) / run(101, 3, 3) == Catch::Approx(16.0).margin(2.5));
  CHECK(run(51, 4, 3) / run(101, 4, 3) == Catch::Approx(16.0).margin(2.5));
}

TEST_CASE("simpson matches Gauss-Legendre on smooth data") {
  auto f = [](double x) { return std::sin(3.0 * x) + 0.5 * x * x; };
  const double exact = oracle::integrate(f, 0.0, 1.0);
  for (std::size_t n : {1001u, 1002u}) {  // even and odd interval counts
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(static_cast<double>(i) / (n - 1));
    CHECK(simpson(v, 1.0 / (n - 1)) == Catch::Approx(exact).margin(1e-11));
  }
}

TEST_CASE("cumulative integral is fourth order and consistent with simpson") {
  auto f = [](double x) { return std::cos(2.0 * x); };
  const std::size_t n = 2001;
  const double h = 1.0 / (n - 1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(i * h);
  const auto c = cumulative_integral(v, h);
  CHECK(c[0] == 0.0);
  for (std::size_t i : {177u, 1000u, 2000u}) {
    const double x = i * h;
    CHECK(c[i] == Catch::Approx(0.5 * std::sin(2.0 * x)).margin(1e-12));
  }
}

TEST_CASE("cubic interpolation reproduces cubics exactly and is fourth order") {
  auto cubic = [](double x) { return 1.0 + x * (2.0 + x * (-0.5 + 0.25 * x)); };
  const std::size_t n = 11;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = cubic(0.1 * i);
  for (double x : {0.03, 0.5, 0.77, 0.999}) {
    CHECK(cubic_interp(v, 0.0, 0.1, x) == Catch::Approx(cubic(x)).margin(1e-13));
  }
  auto smooth = [](double x) { return std::sin(5.0 * x); };
  auto err_at = [&](std::size_t m) {
    std::vector<double> s(m);
    const double h = 1.0 / (m - 1);
    for (std::size_t i = 0; i < m; ++i) s[i] = smooth(i * h);
    double worst = 0.0;
    for (int j = 0; j < 100; ++j) {
      const double x = 0.005 + 0.99 * j / 99.0;
      worst = std::max(worst, std::abs(cubic_interp(s, 0.0, h, x) - smooth(x)));
    }
    return worst;
  };
  CHECK(err_at(101) / err_at(201) > 10.0);
}

TEST_CASE("tridiagonal solve round-trips against multiplication") {
  const std::size_t n = 50;
  std::vector<std::complex<double>> d(n), lo(n - 1), up(n - 1), x(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = {2.0 + 0.01 * i, 0.5};
    x[i] = {std::sin(0.3 * i), std::cos(0.2 * i)};
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lo[i] = {-0.4, 0.1};
    up[i] = {-0.3, -0.2};
  }
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = d[i] * x[i];
    if (i > 0) rhs[i] += lo[i - 1] * x[i - 1];
    if (i + 1 < n) rhs[i] += up[i] * x[i + 1];
  }
  solve_tridiagonal(d, lo, up, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(rhs[i].real() == Catch::Approx(x[i].real()).margin(1e-12));
    CHECK(rhs[i].imag() == Catch::Approx(x[i].imag()).margin(1e-12));
  }
}
