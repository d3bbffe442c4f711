#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "oracle.hpp"
#include "qbohm/calculus.hpp"
#include "qbohm/well.hpp"

using namespace qbohm;

namespace {

// Independent quadrature of the moments over the analytic state, with the
// derivative of psi written out by hand.
struct QuadMoments {
  double norm, mean_x, mean_x_sq, mean_p_sq;
};

QuadMoments quad_moments(const WellSpec& w, int n) {
  const double g = w.gamma, k = w.wavenumber(n), A = w.amplitude();
  auto psi = [&](double x) { return w.psi_value(n, x); };
  auto dpsi = [&](double x) {
    const double f = deformation_factor(g, x);
    const double u = deformed_coordinate(x, g);
    return A * std::pow(f, -1.5) * (k * std::cos(k * u) - 0.5 * g * std::sin(k * u));
  };
  QuadMoments m;
  m.norm = oracle::integrate([&](double x) { return psi(x) * psi(x); }, 0.0, w.L, 96);
  m.mean_x = oracle::integrate([&](double x) { return x * psi(x) * psi(x); }, 0.0, w.L, 96);
  m.mean_x_sq =
      oracle::integrate([&](double x) { return x * x * psi(x) * psi(x); }, 0.0, w.L, 96);
  m.mean_p_sq = w.hbar * w.hbar *
                oracle::integrate([&](double x) { return dpsi(x) * dpsi(x); }, 0.0, w.L, 96);
  return m;
}

}  // namespace

TEST_CASE("well energies match high-precision references") {
  struct Row {
    double gl;
    double e[3];
  };
  const Row table[] = {
      {-0.5, {2.5677860569029775, 10.27114422761191, 23.110074512126798}},
      {0.0, {4.9348022005446793, 19.739208802178717, 44.413219804902114}},
      {1.0, {10.27114422761191, 41.084576910447641, 92.440298048507192}},
      {5.0, {38.428226491235508, 153.71290596494203, 345.85403842111957}},
  };
  for (const auto& row : table) {
    WellSpec w(1.0, row.gl);
    for (int n = 1; n <= 3; ++n)
      CHECK(w.energy(n) == Catch::Approx(row.e[n - 1]).epsilon(1e-13));
  }
  // Expanding profile, unit width: E_1 = pi^2 / (2 ln^2 2).
  CHECK(WellSpec(1.0, 1.0).energy(1) ==
        Catch::Approx(10.271144227611910192).epsilon(1e-14));
}

TEST_CASE("closed-form moments agree with independent quadrature") {
  for (double gl : {-0.5, 1.0, 5.0}) {
    WellSpec w(1.0, gl);
    for (int n = 1; n <= 3; ++n) {
      const auto cm = well_moments(w, n);
      const auto qm = quad_moments(w, n);
      CHECK(qm.norm == Catch::Approx(1.0).epsilon(1e-12));
      CHECK(cm.mean_x == Catch::Approx(qm.mean_x).epsilon(1e-10));
      CHECK(cm.mean_x_sq == Catch::Approx(qm.mean_x_sq).epsilon(1e-10));
      CHECK(cm.mean_p_sq == Catch::Approx(qm.mean_p_sq).epsilon(1e-10));
      CHECK(cm.mean_p == 0.0);
      CHECK(cm.var_x ==
            Catch::Approx(qm.mean_x_sq - qm.mean_x * qm.mean_x).epsilon(1e-9));
    }
  }
}

TEST_CASE("undeformed moments take the textbook values") {
  WellSpec w(2.0, 0.0);
  for (int n = 1; n <= 3; ++n) {
    const auto m = well_moments(w, n);
    const double npi = n * M_PI;
    CHECK(m.mean_x == Catch::Approx(1.0).margin(1e-15));
    CHECK(m.mean_x_sq ==
          Catch::Approx(4.0 * (1.0 / 3.0 - 1.0 / (2.0 * npi * npi))).margin(1e-15));
    CHECK(m.mean_p_sq == Catch::Approx(npi * npi / 4.0).epsilon(1e-14));
  }
}

TEST_CASE("closed-form report matches the frozen strongly-contracted anchor") {
  auto r = well_report(WellSpec(1.0, -0.9), 1);
  CHECK(r.cr_q_lhs == Catch::Approx(0.15717905270593746).epsilon(1e-12));
  CHECK(r.cr_q_rhs == Catch::Approx(-0.31082517925402101).epsilon(1e-12));
  CHECK(r.cr_pdm == Catch::Approx(0.17828798698238154).epsilon(1e-12));
  CHECK(r.cr_std == Catch::Approx(3.6741759820248171).epsilon(1e-12));
  CHECK(r.deformed_bound_ok);
  CHECK(r.cr_pdm < 1.0);
}

TEST_CASE("default sweep grid has the documented shape") {
  auto v = default_sweep_gamma_l();
  REQUIRE(v.size() == 41);
  CHECK(v.front() == Catch::Approx(-0.95).margin(1e-15));
  CHECK(v[13] == Catch::Approx(-0.05).margin(1e-12));
  CHECK(v[14] == 0.0);
  CHECK(v[15] == Catch::Approx(0.01).epsilon(1e-12));
  CHECK(v.back() == Catch::Approx(10.0).epsilon(1e-12));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
}

TEST_CASE("sweep reports cover the bound everywhere with the frozen extrema") {
  auto rows = sweep_reports(default_sweep_gamma_l(), 3, 1.0, 1.0, 1.0);
  REQUIRE(rows.size() == 123);
  double min_margin = 1e300, min_crstd = 1e300;
  for (const auto& r : rows) {
    CHECK(r.deformed_bound_ok);
    CHECK(r.margin_q >= -1e-10);
    CHECK(r.cr_std >= 1.0);  // the plain uncertainty product never dips below hbar/2
    min_margin = std::min(min_margin, r.margin_q);
    min_crstd = std::min(min_crstd, r.cr_std);
  }
  CHECK(min_margin == Catch::Approx(0.225762179547).epsilon(1e-9));
  // The weakest uncertainty product sits at the undeformed n = 1 point.
  CHECK(min_crstd == Catch::Approx(M_PI * M_PI / 3.0 - 2.0).epsilon(1e-12));
  // Rows are ordered by sweep value, then quantum number.
  CHECK(rows[0].n == 1);
  CHECK(rows[1].n == 2);
  CHECK(rows[3].n == 1);
  CHECK(rows[3].gamma_L > rows[0].gamma_L);
  CHECK(rows[42].n == 1);
}

TEST_CASE("analytic states are q-normalised on a grid") {
  WellSpec w(1.0, 5.0);
  auto grid = w.grid(4001);
  auto phi = sample_phi(w, 3, grid);
  CHECK(norm_sq(phi) == Catch::Approx(1.0).margin(1e-9));
  auto psi = sample_psi(w, 3, grid);
  CHECK(norm_sq(psi) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("well construction rejects unusable parameters") {
  CHECK_THROWS(WellSpec(0.0, 1.0));
  CHECK_THROWS_AS(WellSpec(1.0, -1.2), singularity_error);
  CHECK_THROWS(WellSpec(1.0, 1.0, -1.0));
  CHECK_THROWS(WellSpec(1.0, 1.0).wavenumber(0));
}

TEST_CASE("report csv carries the documented columns") {
  auto rows = sweep_reports({0.5}, 2, 1.0, 1.0, 1.0);
  std::ostringstream os;
  write_report_csv(os, rows, true);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "gamma_L,n,I_pdm,I_q,I_F,mean_x,var_x,cr_q_lhs,cr_q_rhs,cr_pdm,cr_std,margin_q,"
        "E_n,L_q,k_qn");
  std::size_t count = 0;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) ++count;
  CHECK(count == 2);

  std::ostringstream os2;
  write_report_csv(os2, rows, false);
  std::istringstream is2(os2.str());
  std::getline(is2, header);
  CHECK(header == "gamma_L,n,I_pdm,I_q,I_F,mean_x,var_x,cr_q_lhs,cr_q_rhs,cr_pdm,cr_std,margin_q");
}
