#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qbohm/qcalc.hpp"

using namespace qbohm;

TEST_CASE("q_exp basic values and limits") {
  // q = 0: exp_0(u) = 1 + u on the positive branch.
  CHECK(q_exp(1.0, 0.0) == Catch::Approx(2.0));
  CHECK(q_exp(-2.0, 0.0) == 0.0);  // clipped bracket
  // q -> 1 recovers exp.
  CHECK(q_exp(0.7, 1.0) == Catch::Approx(std::exp(0.7)));
  CHECK(q_exp(0.7, 1.0 + 1e-12) == Catch::Approx(std::exp(0.7)));
  // q = 2: exp_2(u) = 1/(1-u).
  CHECK(q_exp(0.5, 2.0) == Catch::Approx(2.0));
  // Cutoff region for q > 1: bracket 1 + (1-q)u <= 0.
  CHECK(q_exp(2.0, 2.0) == 0.0);
}

TEST_CASE("q_log inverts q_exp") {
  for (double q : {0.0, 0.3, 0.9999999999, 1.5}) {
    for (double u : {-0.4, 0.0, 0.3, 1.7}) {
      const double y = q_exp(u, q);
      if (y > 0.0) CHECK(q_log(y, q) == Catch::Approx(u).margin(1e-12));
    }
  }
  CHECK_THROWS_AS(q_log(0.0, 0.5), domain_error);
  CHECK_THROWS_AS(q_log(-1.0, 0.5), domain_error);
}

TEST_CASE("q_add is the group law of q_exp") {
  const double q = 0.4;
  for (double a : {-0.3, 0.2, 1.1}) {
    for (double b : {0.05, 0.8}) {
      CHECK(q_exp(a, q) * q_exp(b, q) == Catch::Approx(q_exp(q_add(a, b, q), q)));
    }
  }
  CHECK(q_add(1.0, 1.0, 0.0) == Catch::Approx(3.0));
}

TEST_CASE("q_sub inverts q_add and has a pole") {
  const double q = 0.25;
  for (double a : {-0.2, 0.6, 2.0}) {
    for (double b : {0.1, 0.9}) {
      CHECK(q_sub(q_add(a, b, q), b, q) == Catch::Approx(a).margin(1e-13));
    }
  }
  // Pole at b = 1/(q-1): 1 + (1-q) b = 0.
  const double b_pole = 1.0 / (0.25 - 1.0);
  CHECK_THROWS_AS(q_sub(1.0, b_pole, 0.25), domain_error);
}

TEST_CASE("deformed coordinate map and its inverse") {
  const double gamma = 1.0;
  CHECK(deformed_coordinate(std::exp(1.0) - 1.0, gamma) == Catch::Approx(1.0));
  CHECK(inverse_coordinate(1.0, gamma) == Catch::Approx(std::exp(1.0) - 1.0));
  for (double x : {-0.4, 0.0, 0.3, 5.0}) {
    CHECK(inverse_coordinate(deformed_coordinate(x, gamma), gamma) ==
          Catch::Approx(x).margin(1e-14));
  }
  // gamma = 0 degenerates to the identity.
  CHECK(deformed_coordinate(0.37, 0.0) == 0.37);
  CHECK(inverse_coordinate(0.37, 0.0) == 0.37);
  // Singular at and beyond the pole x = -1/gamma.
  CHECK_THROWS_AS(deformed_coordinate(-1.0, 1.0), singularity_error);
  CHECK_THROWS_AS(deformed_coordinate(-1.5, 1.0), singularity_error);
}

TEST_CASE("coordinate map equals the q_log composition") {
  // u(x) = xi * ln exp_q(x/xi) with gamma = (1-q)/xi.
  const double q = 0.6, xi = 0.8;
  const auto p = DeformationParams::from_q_xi(q, xi);
  for (double x : {0.1, 0.9, 3.0}) {
    const double via_map = deformed_coordinate(x, p);
    const double via_qexp = xi * std::log(q_exp(x / xi, q));
    CHECK(via_map == Catch::Approx(via_qexp).margin(1e-12));
  }
}

TEST_CASE("DeformationParams validation") {
  const auto p = DeformationParams::from_q_xi(0.5, 2.0);
  CHECK(p.gamma == Catch::Approx(0.25));
  CHECK(p.deformed());
  CHECK_FALSE(DeformationParams::from_gamma(0.0).deformed());
  CHECK_THROWS_AS(DeformationParams::from_q_xi(0.5, 0.0), domain_error);
  DeformationParams bad;
  bad.gamma = 1.0;
  bad.q = 0.5;
  bad.xi = 2.0;  // inconsistent: gamma*xi = 2 but 1-q = 0.5
  CHECK_THROWS_AS(bad.validate(), domain_error);
}
