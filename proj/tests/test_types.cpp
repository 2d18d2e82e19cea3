#include <doctest.h>

#include <cmath>

#include "bartnik/error.hpp"
#include "bartnik/types.hpp"

using namespace bartnik;

TEST_CASE("validate accepts untrapped data with nonnegative Hawking mass") {
  const BartnikData d{1.0, 2.0, 1.0, true};
  CHECK_NOTHROW(validate_data(d));
  CHECK(d.hcal2() == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("validate rejects negative Hawking mass") {
  const BartnikData d{1.0, 3.0, 1.0, true};  // Hcal^2 = 8 > 4/r_o^2
  try {
    validate_data(d);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Infeasible);
  }
}

TEST_CASE("validate rejects time-symmetric data") {
  const BartnikData d{1.0, 1.0, 0.0, true};
  try {
    validate_data(d);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::Infeasible);
  }
}

TEST_CASE("validate rejects trapped data and bad radii") {
  CHECK_THROWS_AS(validate_data(BartnikData{1.0, 0.5, 1.0, true}), Error);
  CHECK_THROWS_AS(validate_data(BartnikData{-1.0, 2.0, 1.0, true}), Error);
  CHECK_THROWS_AS(validate_data(BartnikData{1.0, 2.0, 1.0, false}), Error);
}

TEST_CASE("Hawking mass of constant data") {
  CHECK(hawking_mass_of_data({1.0, 2.0, 0.0, true}) ==
        doctest::Approx(0.0).epsilon(1e-15));
  // generalised apparent horizon data: Hcal = 0 gives r_o / 2
  CHECK(hawking_mass_of_data({2.0, 1.0, 1.0, true}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hawking_mass_of_data({1.0, 1.0, 0.5, true}) ==
        doctest::Approx(0.40625).epsilon(1e-15));
}

TEST_CASE("Hawking mass scaling covariance") {
  const BartnikData d{1.3, 0.9, 0.4, true};
  const double base = hawking_mass_of_data(d);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const BartnikData scaled{lambda * d.r_o, d.H_o / lambda, d.P_o / lambda,
                             true};
    const double got = hawking_mass_of_data(scaled);
    CHECK(std::fabs(got - lambda * base) <= 1e-12 * std::fabs(lambda * base));
  }
}
