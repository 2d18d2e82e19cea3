#include <doctest.h>

#include <cmath>
#include <random>

#include "bartnik/collar.hpp"
#include "bartnik/error.hpp"
#include "bartnik/smoothstep.hpp"

using namespace bartnik;

namespace {

// independent route for the energy density in the round case:
// 2 mu = R + (tr K)^2 - |K|^2 assembled from scratch
double two_mu_assembled(double f, double fp, double fpp, double x, double xp) {
  const double r_scal = 2.0 / (f * f) - 2.0 * (fp * fp + 2.0 * f * fpp) /
                                            (f * f);
  const double trk = xp + 2.0 * x / f;
  const double k_sq = xp * xp + 2.0 * x * x / (f * f);
  return r_scal + trk * trk - k_sq;
}

}  // namespace

TEST_CASE("vacuum families annihilate the energy density") {
  const double m = 1.0;
  struct Family {
    ProfileFunction p;
    double mass;
  };
  const Family families[] = {
      {ProfileFunction::constant(0.0), m},
      {ProfileFunction::sqrt_two_over_r(std::sqrt(m), 1.0), m},
      {ProfileFunction::cmc(0.35, 0.0, 1.0), m},
  };
  for (const auto& fam : families) {
    const auto sol = solve_forward(fam.p, fam.mass, 2.5 * m, 0.0, 10.0);
    for (std::size_t i = 0; i < sol.u.size(); i += 7) {
      const double u = sol.u[i];
      const double mu = mu_block_diagonal(u, sol.up[i], sol.upp[i], 1.0, 2.0,
                                          0.0, fam.p.x(u), fam.p.xp(u));
      CHECK(std::fabs(mu) <= 1e-10);
    }
  }
}

TEST_CASE("closed-form mu equals the independently assembled constraint") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> uf(0.5, 5.0);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double f = uf(rng), fp = ud(rng), fpp = ud(rng);
    const double x = ud(rng), xp = ud(rng);
    const double closed =
        2.0 * mu_block_diagonal(f, fp, fpp, 1.0, 2.0, 0.0, x, xp);
    CHECK(std::fabs(closed - two_mu_assembled(f, fp, fpp, x, xp)) <= 1e-10);
  }
}

TEST_CASE("momentum residual vanishes for analytic presets") {
  SUBCASE("x = 0 is exactly zero") {
    const auto zero = ProfileFunction::constant(0.0);
    const auto sol = solve_forward(zero, 1.0, 2.5, 0.0, 4.0);
    CHECK(momentum_residual(sol.s, sol.u, sol.up, zero) == 0.0);
  }
  SUBCASE("constant and preset profiles stay below 1e-9") {
    const ProfileFunction presets[] = {
        ProfileFunction::constant(0.7),
        ProfileFunction::inverse_sqrt(0.3, 1.0),
        ProfileFunction::cmc(0.2, -0.15, 1.0),
        ProfileFunction::sqrt_two_over_r(0.5, 1.0),
    };
    for (const auto& p : presets) {
      const auto sol = solve_forward(p, 0.9, 2.4, 0.0, 4.0);
      CHECK(momentum_residual(sol.s, sol.u, sol.up, p) <= 1e-9);
    }
  }
  SUBCASE("inconsistent tabulated x'' is surfaced") {
    std::vector<double> r, x, xp, xpp;
    for (int i = 0; i <= 400; ++i) {
      const double rv = 1.5 + 0.02 * i;
      r.push_back(rv);
      x.push_back(0.5 / std::sqrt(rv));
      xp.push_back(-0.25 / (rv * std::sqrt(rv)));
      xpp.push_back(0.0);  // wrong on purpose
    }
    const auto bad = ProfileFunction::custom(r, x, xp, xpp);
    const auto good = ProfileFunction::inverse_sqrt(0.5, 1.5);
    const auto sol = solve_forward(good, 0.5, 2.0, 0.0, 3.0);
    CHECK(momentum_residual(sol.s, sol.u, sol.up, bad) > 1e-6);
  }
}

TEST_CASE("collar constants: worked example") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  const auto x = ProfileFunction::constant(1.0);
  const auto c = collar_constants(d, rc, x);
  CHECK(d.hcal2() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(c.feasC1 == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(c.feasC2 == doctest::Approx(3.525 / 1.1).epsilon(1e-13));
  CHECK(std::fabs(c.k * c.k - c.D * c.D) <= 1e-12);
}

TEST_CASE("collar constants: generalised-horizon data gives m_bar = r_o/2") {
  const BartnikData d{1.0, 1.0, 1.0, true};  // Hcal = 0, P != 0
  const RoundnessConstants rc{0.05, 0.95};
  const auto c = collar_constants(d, rc, ProfileFunction::constant(1.0));
  CHECK(c.m_bar == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("collar constants: sign convention keeps D positive") {
  const BartnikData d{1.0, 1.0, -0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  const auto c = collar_constants(d, rc, ProfileFunction::constant(1.0));
  CHECK(c.sign == -1.0);
  CHECK(c.D > 0.0);
  CHECK(c.D == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("collar constants failure modes") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const RoundnessConstants rc{0.1, 0.9};
  SUBCASE("profile vanishing at the boundary") {
    const auto bad = ProfileFunction::cmc(0.4, 0.4, 1.0);  // x(1) = 0
    try {
      collar_constants(d, rc, bad);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::ZeroProfileAtBoundary);
    }
  }
  SUBCASE("feasibility violation") {
    const auto small = ProfileFunction::constant(0.1);
    try {
      collar_constants(d, rc, small);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind == ErrorKind::Infeasible);
    }
  }
}

TEST_CASE("dec margin at the feasibility boundary") {
  // k^2 = beta makes the margin non-positive once the path term bites
  const RoundnessConstants rc{0.1, 0.9};
  const double k = std::sqrt(rc.beta);
  CHECK(dec_margin_leaf(1.0, k, 0.5, rc) <= 0.0);
}

TEST_CASE("general collar build: audits and boundary reproduction") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.1, 0.9);
  const auto x = find_constant_profile(d, RoundnessConstants{0.1, 0.9}, 2.0);
  const auto slab = build_collar(d, path, x);

  CHECK(std::fabs(slab.boundary().H - d.H_o) <= 1e-10);
  CHECK(std::fabs(slab.boundary().P - d.P_o) <= 1e-10);
  CHECK(std::fabs(slab.constants.k * slab.constants.k -
                  slab.constants.D * slab.constants.D) <= 1e-12);
  CHECK(slab.boundary().m_H ==
        doctest::Approx(hawking_mass_of_data(d)).epsilon(1e-12));

  double min_margin = 1e300;
  for (const auto& leaf : slab.leaves) {
    min_margin = std::min(min_margin, leaf.dec_margin);
  }
  CHECK(min_margin > 0.0);

  // Hawking mass derivative: centered difference matches A k u' (1-D^2)/2
  const auto& c = slab.constants;
  const std::size_t n = slab.leaves.size();
  const double h = 1.0 / (n - 1);
  for (std::size_t i = 200; i + 200 < n; i += 400) {
    const double fd =
        (slab.leaves[i + 1].m_H - slab.leaves[i - 1].m_H) / (2.0 * h);
    const double u = slab.leaves[i].u;
    const double want = c.A * c.k *
                        std::sqrt(v_of(*slab.base, c.m_bar, u)) *
                        (1.0 - c.D * c.D) / 2.0;
    CHECK(std::fabs(fd - want) <= 1e-6 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("simple collar: worked constants") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.1, 0.9);
  const auto slab = build_simple_collar(d, path);
  CHECK(slab.constants.k == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(slab.constants.D == 1.0);
  CHECK(slab.constants.A == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(slab.constants.m_bar ==
        doctest::Approx(0.5 * 0.25 * 0.25).epsilon(1e-14));
  // u is exactly linear for this collar
  const auto& c = slab.constants;
  for (std::size_t i = 0; i < slab.leaves.size(); i += 100) {
    const double s = slab.leaves[i].s;
    CHECK(std::fabs(slab.leaves[i].u - (1.0 + c.A * c.k * s)) <= 1e-12);
  }
  CHECK(slab.end().m_H > 0.5 * 0.25 * 0.25 * 0.25);
}

TEST_CASE("simple collar: round limit degenerates to zero length") {
  const BartnikData d{1.0, 1.0, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.0, 1.0);
  const auto slab = build_simple_collar(d, path);
  CHECK(slab.constants.A == 0.0);
  CHECK(slab.end().m_H == slab.boundary().m_H);
}

TEST_CASE("simple collar: hypothesis failure") {
  const BartnikData d{1.0, 1.9, 0.5, true};
  const auto path = PathDescriptor::make_direct(0.1, 0.9);
  // H_o^2 r_o^2/4 = 0.9025 >= beta/(alpha+1) = 0.818...
  CHECK_THROWS_AS(build_simple_collar(d, path), Error);
}

TEST_CASE("spacetime mean curvature stays positive along the collar") {
  const BartnikData d{1.0, 1.2, 0.6, true};
  const auto path = PathDescriptor::make_direct(0.05, 0.9);
  const auto rc = roundness_constants(path);
  const auto slab = build_collar(d, path, find_constant_profile(d, rc, 2.0));
  for (std::size_t i = 1; i < slab.leaves.size(); i += 53) {
    CHECK(slab.leaves[i].hcal2 > 0.0);
    CHECK(slab.leaves[i].m_H > slab.leaves[i - 1].m_H);
    // f^3 Hcal^2 = 4 (f - 2 m_H) on every leaf
    const auto& leaf = slab.leaves[i];
    const double lhs = leaf.u * leaf.u * leaf.u * leaf.hcal2;
    const double rhs = 4.0 * (leaf.u - 2.0 * leaf.m_H);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
  }
}

TEST_CASE("axisymmetric path drives per-leaf margins") {
  const BartnikData d{1.0, 0.8, 0.4, true};
  // modest non-roundness, frozen for s >= 0.9
  AxisymmetricPath apath;
  const std::size_t ns = 33, nt = 257;
  apath.freeze_eps = 0.1;
  apath.s_axis.resize(ns);
  apath.theta_axis.resize(nt);
  apath.psi.resize(ns * nt);
  for (std::size_t i = 0; i < ns; ++i) {
    apath.s_axis[i] = static_cast<double>(i) / (ns - 1);
  }
  for (std::size_t j = 0; j < nt; ++j) {
    apath.theta_axis[j] = M_PI * static_cast<double>(j) / (nt - 1);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    const double w = 1.0 - smoothstep(apath.s_axis[i] / 0.9);
    for (std::size_t j = 0; j < nt; ++j) {
      apath.psi[i * nt + j] =
          0.01 * w * std::cos(apath.theta_axis[j]);
    }
  }
  const auto path = PathDescriptor::make_axisymmetric(apath);
  const auto rc = roundness_constants(path);
  const auto slab = build_collar(d, path, find_constant_profile(d, rc, 2.0));
  // frozen-tail leaves see the round constants, so their margin beats the
  // conservative global bound
  const auto& tail = slab.leaves[slab.leaves.size() - 5];
  const auto& head = slab.leaves[1];
  CHECK(tail.dec_margin > head.dec_margin);
}
