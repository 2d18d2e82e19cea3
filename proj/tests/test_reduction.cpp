#include <doctest.h>

#include <cmath>
#include <vector>

#include "bartnik/error.hpp"
#include "bartnik/reduction.hpp"
#include "bartnik/types.hpp"

using namespace bartnik;

namespace {

const BartnikData kData{1.0, 1.0, 0.5, true};

double fd4(const std::vector<double>& y, std::size_t i, double h) {
  return (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) /
         (12.0 * h);
}

}  // namespace

TEST_CASE("reduction collar at the reference configuration") {
  const auto c = build_reduction(kData, 2.2, 0.01);
  const double hc2 = kData.hcal2();

  SUBCASE("boundary and endpoint data") {
    // H(0) = 2 sqrt(a(0)^2 + C^2/4) = sqrt(P_o^2 + Hcal^2) = H_o
    CHECK(std::fabs(c.H.front() - kData.H_o) <= 1e-12);
    CHECK(std::fabs(c.P.front() - kData.P_o) <= 1e-12);
    CHECK(std::fabs(c.endpoint_p) <= 1e-10);
    CHECK(std::fabs(c.endpoint_h - std::sqrt(hc2)) <= 1e-10);
    CHECK(c.area_factor <= 1.01 * 1.01 * (1.0 + 1e-12));
  }
  SUBCASE("imposed constancy of the spacetime mean curvature") {
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      CHECK(std::fabs(c.H[i] * c.H[i] - c.P[i] * c.P[i] - hc2) <= 1e-10);
      CHECK(c.H[i] > std::fabs(c.P[i]));  // leafwise strictly untrapped
    }
  }
  SUBCASE("momentum residual is forced to zero") {
    for (double v : c.jnu) {
      CHECK(std::fabs(v) <= 1e-12);
    }
  }
  SUBCASE("energy density margin") {
    CHECK(c.mu_min > 0.0);
    const std::size_t n = c.t.size();
    // frozen region: a == 0 and the closed form pins the endpoint value
    CHECK(c.a[n - 1] == 0.0);
    CHECK(c.b[n - 1] == 0.0);
    const double want =
        0.5 * std::exp(-2.0 * c.eps * c.f[n - 1]) * 2.2 - 0.75 * hc2;
    CHECK(std::fabs(c.mu[n - 1] - want) <= 1e-14);
    CHECK(c.mu_min == c.mu[n - 1]);  // f grows, so mu is smallest at t = 1
  }
}

TEST_CASE("reduced and long-form energy density agree") {
  const auto c = build_reduction(kData, 2.2, 0.01, 8001);
  const double h = c.t[1] - c.t[0];
  const std::size_t n = c.t.size();
  for (std::size_t i = 2; i + 2 < n; i += 13) {
    // long form with H' and a' taken from the grid
    const double hp = fd4(c.H, i, h);
    const double ap = fd4(c.a, i, h);
    const double long_form =
        0.5 * std::exp(-2.0 * c.eps * c.f[i]) * c.r_min -
        0.75 * (c.H[i] * c.H[i] - c.P[i] * c.P[i]) +
        (2.0 * c.a[i] * ap - hp * c.fp[i]) / (c.eps * c.fp[i]);
    CHECK(std::fabs(long_form - c.mu[i]) <= 1e-10);
    CHECK(std::fabs(reduction_mu(c, c.t[i]) - c.mu[i]) <= 1e-12);
  }
}

TEST_CASE("differentiated constancy: a a' = f' f'' on the grid") {
  const auto c = build_reduction(kData, 2.2, 0.01, 8001);
  const double h = c.t[1] - c.t[0];
  for (std::size_t i = 2; i + 2 < c.t.size(); i += 17) {
    const double ap = fd4(c.a, i, h);
    const double fpp = fd4(c.fp, i, h);
    CHECK(std::fabs(8.0 * c.a[i] * ap - 8.0 * c.fp[i] * fpp) <= 1e-10);
  }
}

TEST_CASE("endpoint Hawking mass follows the area-slack scaling law") {
  const double hc2 = kData.hcal2();
  const double m_h0 = hawking_mass_of_data(kData);
  double prev_gap = 1e300;
  for (double delta_max : {0.1, 0.01, 0.001}) {
    const auto c = build_reduction(kData, 2.2, delta_max);
    const double growth = std::exp(c.eps * c.f.back());
    const double r1 = kData.r_o * growth;
    const double mh1 = 0.5 * r1 * (1.0 - 0.25 * r1 * r1 * hc2);
    // the law: same formula with (1+delta) in place of the growth factor
    const double law = 0.5 * kData.r_o * (1.0 + c.delta) *
                       (1.0 - 0.25 * kData.r_o * kData.r_o *
                                  (1.0 + c.delta) * (1.0 + c.delta) * hc2);
    CHECK(std::fabs(mh1 - law) <= 1e-8);
    const double gap = std::fabs(mh1 - m_h0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 2e-3);
}

TEST_CASE("reduction rejections") {
  SUBCASE("degenerate spacetime mean curvature") {
    try {
      build_reduction(BartnikData{1.0, 1.0, 1.0, true}, 2.2, 0.01);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::DegenerateC);
    }
  }
  SUBCASE("curvature hypothesis") {
    try {
      build_reduction(kData, 1.0, 0.01);  // 1.0 < 1.5 * 0.75
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::HypothesisFailed);
    }
  }
  SUBCASE("bad slack") {
    CHECK_THROWS_AS(build_reduction(kData, 2.2, -0.1), Error);
  }
}
