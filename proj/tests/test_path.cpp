#include <doctest.h>

#include <cmath>
#include <vector>

#include "bartnik/error.hpp"
#include "bartnik/path.hpp"
#include "bartnik/smoothstep.hpp"

using namespace bartnik;

namespace {

// psi(s, theta) = c w(s) cos(theta), w = 1 - S(s / 0.9): round for s >= 0.9
AxisymmetricPath make_cos_family(double c, std::size_t ns, std::size_t nt) {
  AxisymmetricPath path;
  path.freeze_eps = 0.1;
  path.s_axis.resize(ns);
  path.theta_axis.resize(nt);
  path.psi.resize(ns * nt);
  for (std::size_t i = 0; i < ns; ++i) {
    path.s_axis[i] = static_cast<double>(i) / (ns - 1);
  }
  for (std::size_t j = 0; j < nt; ++j) {
    path.theta_axis[j] = M_PI * static_cast<double>(j) / (nt - 1);
  }
  for (std::size_t i = 0; i < ns; ++i) {
    const double w = 1.0 - smoothstep(path.s_axis[i] / 0.9);
    for (std::size_t j = 0; j < nt; ++j) {
      path.psi[i * nt + j] = c * w * std::cos(path.theta_axis[j]);
    }
  }
  return path;
}

// closed-form Gaussian curvature of e^{2 psi} dtheta^2 + e^{-2 psi}
// sin^2(theta) dphi^2 for psi = eps cos(theta):
// K = e^{-2 eps cos}(1 - 4 eps cos - 2 eps^2 sin^2)
double exact_curvature(double eps, double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  return std::exp(-2.0 * eps * ct) *
         (1.0 - 4.0 * eps * ct - 2.0 * eps * eps * st * st);
}

}  // namespace

TEST_CASE("round path gives (alpha, beta) = (0, 1) to 1e-10") {
  const auto path = make_cos_family(0.0, 33, 2049);
  const auto rc = roundness_constants(PathDescriptor::make_axisymmetric(path));
  CHECK(std::fabs(rc.alpha) <= 1e-10);
  CHECK(std::fabs(rc.beta - 1.0) <= 1e-10);
}

TEST_CASE("direct descriptors pass through with range validation") {
  const auto rc =
      roundness_constants(PathDescriptor::make_direct(0.1, 0.9));
  CHECK(rc.alpha == 0.1);
  CHECK(rc.beta == 0.9);
  CHECK_THROWS_AS(roundness_constants(PathDescriptor::make_direct(-0.1, 0.9)),
                  Error);
  CHECK_THROWS_AS(roundness_constants(PathDescriptor::make_direct(0.1, 1.2)),
                  Error);
}

TEST_CASE("cos family: grid curvature matches the closed form") {
  const double c = 0.05;
  const std::size_t ns = 17, nt = 513;
  const auto path = make_cos_family(c, ns, nt);
  const auto k = gauss_curvature_grid(path);
  for (std::size_t i = 0; i < ns; ++i) {
    const double eps =
        c * (1.0 - smoothstep(path.s_axis[i] / 0.9));
    for (std::size_t j = 4; j + 4 < nt; ++j) {
      const double want = exact_curvature(eps, path.theta_axis[j]);
      CHECK(std::fabs(k[i * nt + j] - want) <= 1e-6);
    }
  }
}

TEST_CASE("cos family: constants follow the symbolic expansion") {
  for (double c : {0.02, 0.01, 0.005}) {
    const auto path = make_cos_family(c, 65, 1025);
    const auto rc =
        roundness_constants(PathDescriptor::make_axisymmetric(path));
    // alpha = 2 c^2 max |w'|^2 with the envelope derivative analytic
    double wp_max = 0.0;
    for (std::size_t i = 0; i < path.s_axis.size(); ++i) {
      wp_max = std::max(wp_max,
                        std::fabs(smoothstep_d1(path.s_axis[i] / 0.9) / 0.9));
    }
    const double alpha_want = 2.0 * c * c * wp_max * wp_max;
    CHECK(std::fabs(rc.alpha - alpha_want) <= 1e-4 * alpha_want + 1e-9);
    // beta = min K: second order in c the minimum is 1 - 6c + 10c^2
    const double series = 1.0 - 6.0 * c + 10.0 * c * c;
    CHECK(std::fabs(rc.beta - series) <= 50.0 * c * c * c + 1e-8);
    CHECK(rc.beta < 1.0);
  }
}

TEST_CASE("non-positive curvature is rejected with location") {
  const auto path = make_cos_family(0.3, 17, 513);
  try {
    roundness_constants(PathDescriptor::make_axisymmetric(path));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NonPositiveCurvature);
  }
}

TEST_CASE("conformal pair family is traceless on the grid") {
  // gamma^{theta theta} gamma'_{theta theta} + gamma^{phi phi}
  // gamma'_{phi phi} = 2 psi_s - 2 psi_s: algebraic cancellation
  const auto path = make_cos_family(0.05, 33, 129);
  const auto dpsi = psi_s_grid(path);
  for (double v : dpsi) {
    const double trace = 2.0 * v - 2.0 * v;
    CHECK(std::fabs(trace) <= 1e-14);
  }
}

TEST_CASE("freeze window and pole smoothness are validated") {
  auto path = make_cos_family(0.05, 33, 129);
  path.psi[(path.s_axis.size() - 1) * path.theta_axis.size() + 3] = 0.01;
  CHECK_THROWS_AS(validate_axisymmetric(path), Error);
}

TEST_CASE("leaf table brackets the global constants") {
  const auto path = make_cos_family(0.05, 65, 513);
  const PathDescriptor desc = PathDescriptor::make_axisymmetric(path);
  const auto rc = roundness_constants(desc);
  const auto table = build_leaf_table(desc, rc);
  for (double s : {0.0, 0.3, 0.7, 0.95, 1.0}) {
    const auto leaf = sample_leaf(table, s);
    CHECK(leaf.alpha <= rc.alpha + 1e-15);
    CHECK(leaf.beta >= rc.beta - 1e-15);
  }
  // frozen tail is exactly round
  const auto tail = sample_leaf(table, 0.97);
  CHECK(std::fabs(tail.alpha) <= 1e-10);
  CHECK(std::fabs(tail.beta - 1.0) <= 1e-9);
}
