#include <doctest.h>

#include <cmath>

#include "bartnik/error.hpp"
#include "bartnik/mass_bounds.hpp"

using namespace bartnik;

TEST_CASE("simplified-collar bound: worked instance") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  CHECK(std::fabs(bound51(d, rc) - 0.48125) <= 1e-12);
}

TEST_CASE("simplified-collar bound: round limit and monotone approach") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const double m_h0 = hawking_mass_of_data(d);
  CHECK(bound51(d, RoundnessConstants{0.0, 1.0}) == m_h0);
  double prev = 1e300;
  for (double alpha : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    const double b = bound51(d, RoundnessConstants{alpha, 1.0 - alpha});
    CHECK(b < prev);
    CHECK(b > m_h0);
    prev = b;
  }
  CHECK(prev - m_h0 < 1e-2);
}

TEST_CASE("simplified-collar bound: hypothesis failure carries a margin") {
  const BartnikData d{1.0, 1.9, 0.5, true};
  try {
    bound51(d, RoundnessConstants{0.1, 0.9});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::HypothesisFailed);
    CHECK(e.where < 0.0);
  }
}

TEST_CASE("witness: constructed collar meets its own bound") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.1, 0.9);
  const auto rep = mass_bounds(d, path, {}, /*witness=*/true);
  REQUIRE(rep.bound51.has_value());
  REQUIRE(rep.witness_mh1.has_value());
  CHECK(*rep.witness_mh1 <= *rep.bound51 + 1e-10);
}

TEST_CASE("reduction bound: worked factor 1.2") {
  // Hcal^2 = 1: H_o = sqrt(2), P_o = 1
  const BartnikData d{1.0, std::sqrt(2.0), 1.0, true};
  const RoundnessConstants rc{0.1, 0.9};
  const double m_h0 = hawking_mass_of_data(d);
  CHECK(std::fabs(bound62(d, rc) - 1.2 * m_h0) <= 1e-12);
  // alpha -> 0 returns the Hawking mass exactly
  CHECK(bound62(d, RoundnessConstants{0.0, 1.0}) == m_h0);
}

TEST_CASE("reduction bound: pole behavior near the hypothesis boundary") {
  const RoundnessConstants rc{0.1, 0.9};
  // Hcal^2 r_o^2/4 -> beta/(1+alpha): bound diverges, then fails
  const double hc2_crit = 4.0 * rc.beta / (1.0 + rc.alpha);
  double prev = 0.0;
  for (double frac : {0.9, 0.99, 0.999}) {
    const double hc2 = frac * hc2_crit;
    const double h = std::sqrt(hc2 + 0.25);
    const BartnikData d{1.0, h, 0.5, true};
    const double b = bound62(d, rc);
    CHECK(b > prev);
    prev = b;
  }
  const double h_bad = std::sqrt(1.05 * hc2_crit + 0.25);
  CHECK_THROWS_AS(bound62(BartnikData{1.0, h_bad, 0.5, true}, rc), Error);
}

TEST_CASE("reduction bound checks the curvature hypothesis when given") {
  const BartnikData d{1.0, std::sqrt(2.0), 1.0, true};  // Hcal^2 = 1
  const RoundnessConstants rc{0.1, 0.9};
  CHECK_NOTHROW(bound62(d, rc, 2.0));
  CHECK_THROWS_AS(bound62(d, rc, 1.4), Error);
}

TEST_CASE("both bounds scale linearly under the data rescaling") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  const double b51 = bound51(d, rc);
  const double b62 = bound62(d, rc);
  for (double lam : {0.5, 2.0, 10.0}) {
    const BartnikData scaled{lam * d.r_o, d.H_o / lam, d.P_o / lam, true};
    CHECK(std::fabs(bound51(scaled, rc) - lam * b51) <=
          1e-12 * lam * b51);
    CHECK(std::fabs(bound62(scaled, rc) - lam * b62) <=
          1e-12 * lam * b62);
  }
}

TEST_CASE("bound sweep pairs axes and flags infeasible rows") {
  const auto rows = bound_sweep(1.0, {0.5, 1.9}, {0.25}, {0.1}, {0.9});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].feasible51);
  CHECK(!rows[1].feasible51);  // H_o = 1.9 violates the hypothesis
  CHECK(std::isnan(rows[1].bound51));
}
