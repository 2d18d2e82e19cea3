#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "bartnik/error.hpp"
#include "bartnik/profile.hpp"

using namespace bartnik;

TEST_CASE("G_x for the presets") {
  const auto inv = ProfileFunction::inverse_sqrt(0.7, 1.0);
  for (double r : {0.5, 1.0, 3.0, 20.0}) {
    CHECK(std::fabs(g_of(inv, r)) <= 1e-14);
  }
  const auto cst = ProfileFunction::constant(1.3);
  CHECK(g_of(cst, 2.0) == doctest::Approx(1.69).epsilon(1e-14));
  // x = K2 r: G = 3 K2^2 r^2
  const auto cmc = ProfileFunction::cmc(0.4, 0.0, 1.0);
  for (double r : {0.5, 0.7, 2.0, 9.0, 50.0}) {
    CHECK(g_of(cmc, r) ==
          doctest::Approx(3.0 * 0.16 * r * r).epsilon(1e-12));
  }
  // full preset family against hand-expanded closed forms on [0.5, 50]
  const auto mixed = ProfileFunction::cmc(0.3, -0.2, 1.0);
  for (int i = 0; i <= 99; ++i) {
    const double r = 0.5 + 49.5 * i / 99.0;
    const double x = 0.3 * r + 0.2 / (r * r);
    const double xp = 0.3 - 0.4 / (r * r * r);
    const double g_want = x * x + 2.0 * x * xp * r;
    CHECK(g_of(mixed, r) == doctest::Approx(g_want).epsilon(1e-12));
    CHECK(v_of(mixed, 0.7, r) ==
          doctest::Approx(1.0 - 1.4 / r + x * x).epsilon(1e-12));
  }
}

TEST_CASE("V_{x,m} for the presets") {
  const auto zero = ProfileFunction::constant(0.0);
  CHECK(v_of(zero, 1.0, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
  // x = C3 sqrt(2/r) with C3 = sqrt(m): flat embedding, V == 1
  const double m = 0.8;
  const auto flat = ProfileFunction::sqrt_two_over_r(std::sqrt(m), 0.5);
  for (double r : {0.5, 0.6, 1.0, 4.0, 15.0, 50.0}) {
    CHECK(v_of(flat, m, r) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const double B = 0.6;
  const auto inv = ProfileFunction::inverse_sqrt(B, 0.5);
  for (double r : {0.7, 1.0, 8.0}) {
    CHECK(v_of(inv, 0.5 * B * B, r) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("preset derivatives agree with finite differences") {
  const auto profiles = {ProfileFunction::inverse_sqrt(0.4, 0.5),
                         ProfileFunction::cmc(0.3, -0.2, 1.0),
                         ProfileFunction::sqrt_two_over_r(1.1, 0.5)};
  for (const auto& p : profiles) {
    CHECK(max_c1_defect(p, 1.0, 20.0, 16001) <= 1e-9);
  }
}

TEST_CASE("monotonicity audit") {
  // constant profile: G' = 0 passes non-strict, V' = 2m/r^2 > 0
  const auto cst = ProfileFunction::constant(0.5);
  const auto rep = check_monotonicity(cst, 0.3, 0.6, 10.0);
  CHECK(rep.g_nondecreasing);
  CHECK(rep.v_increasing);

  // umbilical x = K2 r with m = 0: G' = 6 K2^2 r >= 0, V' = 2 K2^2 r > 0
  const auto umb = ProfileFunction::cmc(1.0, 0.0, 1.0);
  const auto rep2 = check_monotonicity(umb, 0.0, 0.5, 10.0);
  CHECK(rep2.g_nondecreasing);
  CHECK(rep2.v_increasing);

  // x = B/sqrt(r): V' = (2m - B^2)/r^2 fails when 2m < B^2
  const auto inv = ProfileFunction::inverse_sqrt(1.0, 0.5);
  const auto rep3 = check_monotonicity(inv, 0.1, 0.6, 10.0);
  CHECK(!rep3.v_increasing);
  CHECK(rep3.witness_v > 0.0);
}

TEST_CASE("cmc pair violating condition (iv) loses V-monotonicity") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const double m_o = hawking_mass_of_data(d);
  const double k2 = 0.1, k1 = 0.4;
  const auto feas = cmc_feasibility(d, RoundnessConstants{0.05, 0.95}, k2,
                                    k1);
  REQUIRE(!feas.cond_iv);
  const auto p = ProfileFunction::cmc(k2, k1, 1.0);
  const auto rep = check_monotonicity(p, m_o, 2.0 * m_o, 20.0);
  CHECK(!rep.v_increasing);
  CHECK(rep.witness_v >= 2.0 * m_o);
}

TEST_CASE("scaled profiles preserve monotonicity verdicts") {
  // G_{Dx} = D^2 G_x and V_{Dx,m} keeps V' = 2m/r^2 + 2 D^2 x x'
  const auto base = ProfileFunction::cmc(0.5, 0.3, 1.0);
  const auto rep = check_monotonicity(base, 0.4, 0.8, 12.0);
  for (double d_scale : {-1.0, -0.5, 0.25, 1.0}) {
    const ScaledProfile scaled(base, d_scale);
    const auto rep_s = check_monotonicity(scaled, 0.4, 0.8, 12.0);
    CHECK(rep_s.g_nondecreasing == rep.g_nondecreasing);
    CHECK(rep_s.v_increasing == rep.v_increasing);
    for (double r : {0.9, 2.0, 7.0}) {
      CHECK(g_of(scaled, r) ==
            doctest::Approx(d_scale * d_scale * g_of(base, r)).epsilon(1e-12));
    }
  }
}

TEST_CASE("grid refinement never flips a preset verdict") {
  const auto p = ProfileFunction::cmc(0.3, -0.1, 1.0);
  const auto coarse = check_monotonicity(p, 0.35, 0.8, 15.0, 501);
  const auto fine = check_monotonicity(p, 0.35, 0.8, 15.0, 4001);
  CHECK(coarse.g_nondecreasing == fine.g_nondecreasing);
  CHECK(coarse.v_increasing == fine.v_increasing);
}

TEST_CASE("cmc feasibility conditions") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.05, 0.95};

  SUBCASE("both zero fails") {
    const auto rep = cmc_feasibility(d, rc, 0.0, 0.0);
    CHECK(!rep.not_both_zero);
    CHECK(!rep.all());
  }
  SUBCASE("K1 = 2 m_o^3 K2 maximizes the (iv) slack") {
    const double m_o = hawking_mass_of_data(d);
    const double k2 = 0.4;
    const auto rep = cmc_feasibility(d, rc, k2, 2.0 * m_o * m_o * m_o * k2);
    const double want =
        4.0 * std::pow(m_o, 4) * (1.0 + 9.0 * k2 * k2 * m_o * m_o);
    CHECK(rep.cond_iv);
    CHECK(rep.margin_iv == doctest::Approx(want).epsilon(1e-13));
  }
  SUBCASE("K1 = K2 r_o^3 fails (iii)") {
    const auto rep = cmc_feasibility(d, rc, 0.4, 0.4);
    CHECK(!rep.cond_iii);
  }
  SUBCASE("a feasible pair") {
    const auto rep = cmc_feasibility(d, rc, 0.1, -0.3);
    CHECK(rep.all());
  }
}

TEST_CASE("find_constant_profile satisfies the feasibility inequality") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  const auto p = find_constant_profile(d, rc, 1.21);
  const double L1_sq = p.x(1.0) * p.x(1.0);
  CHECK(L1_sq == doctest::Approx(1.21 * 0.25 / 3.5).epsilon(1e-13));
  // independent check of the admissibility inequality
  const double c2 = (4.0 * rc.beta - rc.alpha * d.hcal2()) /
                    (1.0 + rc.alpha * L1_sq);
  CHECK(d.P_o * d.P_o < c2 * L1_sq);

  SUBCASE("alpha = 0 limit") {
    const RoundnessConstants round{0.0, 0.9};
    const auto q = find_constant_profile(d, round, 1.21);
    const double want = std::fabs(d.P_o) / (2.0 * std::sqrt(0.9)) * 1.1;
    CHECK(q.x(2.0) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("hypothesis failure") {
    const RoundnessConstants bad{4.0, 0.9};
    CHECK_THROWS_AS(find_constant_profile(d, bad, 1.21), Error);
  }
}

TEST_CASE("custom profiles interpolate and expose inconsistent columns") {
  std::vector<double> r, x, xp, xpp;
  for (int i = 0; i <= 60; ++i) {
    const double rv = 1.0 + 0.1 * i;
    r.push_back(rv);
    x.push_back(0.5 / std::sqrt(rv));
    xp.push_back(-0.25 / (rv * std::sqrt(rv)));
    xpp.push_back(0.375 / (rv * rv * std::sqrt(rv)));
  }
  const auto p = ProfileFunction::custom(r, x, xp, xpp);
  const auto exact = ProfileFunction::inverse_sqrt(0.5, 1.0);
  for (double rv : {1.05, 2.33, 6.7}) {
    CHECK(p.x(rv) == doctest::Approx(exact.x(rv)).epsilon(1e-5));
    CHECK(p.xp(rv) == doctest::Approx(exact.xp(rv)).epsilon(1e-3));
  }
  CHECK(max_c1_defect(p, 1.1, 6.9, 301) <= 2e-5);

  // domain enforcement
  CHECK_THROWS_AS(p.x(0.5), Error);
  CHECK_THROWS_AS(p.x(8.0), Error);
}

TEST_CASE("growth bound certification") {
  const auto p = ProfileFunction::cmc(0.3, -0.2, 1.0);
  CHECK_NOTHROW(certify_growth_bound(p, 1.0, 20.0));
  auto lying = ProfileFunction::cmc(0.3, -0.2, 4.0);  // bound anchored too far
  CHECK_THROWS_AS(certify_growth_bound(lying, 1.0, 20.0), Error);
}

TEST_CASE("out-of-domain evaluation is rejected") {
  auto p = ProfileFunction::constant(1.0);
  p.set_domain(Interval{0.5, 10.0});
  CHECK_THROWS_AS(p.x(0.1), Error);
  CHECK_THROWS_AS(v_of(p, 1.0, -2.0), Error);
}
