#include "bartnik/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bartnik/error.hpp"
#include "bartnik/quadrature.hpp"
#include "bartnik/smoothstep.hpp"

namespace bartnik {

namespace {

// a(t) = (P_o/2) S(t): quintic step down, S(0) = 1, S == 0 on [1/2, 1]
double a_shape(double t) { return quintic_step((0.5 - t) / 0.5); }
double a_shape_d1(double t) { return -2.0 * quintic_step_d1((0.5 - t) / 0.5); }

}  // namespace

ReductionCollar build_reduction(const BartnikData& d, double r_min,
                                double delta_max, int grid_points) {
  validate_data(d);
  const double hc2 = d.hcal2();
  if (!(hc2 > 0.0)) {
    throw Error(ErrorKind::DegenerateC,
                "Hcal_o = 0 makes the momentum-forcing choice singular", hc2);
  }
  if (!(r_min > 1.5 * hc2)) {
    throw Error(ErrorKind::HypothesisFailed,
                "curvature bound R_gamma > (3/2) Hcal_o^2 fails", r_min);
  }
  if (!(delta_max > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "delta_max must be positive",
                delta_max);
  }
  const int n = grid_points;
  if (n < 9) throw Error(ErrorKind::InvalidInput, "grid too small");

  ReductionCollar c;
  c.C = std::sqrt(hc2);
  c.r_min = r_min;
  c.t.resize(n);
  c.a.resize(n);
  c.b.resize(n);
  c.f.resize(n);
  c.fp.resize(n);
  c.H.resize(n);
  c.P.resize(n);
  c.mu.resize(n);
  c.jnu.resize(n);

  const double half_p = 0.5 * d.P_o;
  std::vector<double> ap(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    c.t[i] = t;
    c.a[i] = half_p * a_shape(t);
    ap[i] = half_p * a_shape_d1(t);
    c.fp[i] = std::sqrt(c.a[i] * c.a[i] + 0.25 * hc2);
  }
  auto speed = [&](double t) {
    const double av = half_p * a_shape(t);
    return std::sqrt(av * av + 0.25 * hc2);
  };
  c.f[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    c.f[i] = c.f[i - 1] + gl64(speed, c.t[i - 1], c.t[i]);
  }

  const double f1 = c.f[n - 1];
  const double eps_area = std::log1p(delta_max) / f1;
  const double eps_mu = std::log(2.0 * r_min / (3.0 * hc2)) / (2.0 * f1);
  c.eps = std::min(eps_area, 0.95 * eps_mu);

  c.mu_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    c.b[i] = c.a[i] + ap[i] / (c.eps * c.fp[i]);
    c.H[i] = 2.0 * c.fp[i];
    c.P[i] = 2.0 * c.a[i];
    c.jnu[i] = 2.0 * c.fp[i] * (c.b[i] - c.a[i]) - 2.0 * ap[i] / c.eps;
    c.mu[i] = 0.5 * std::exp(-2.0 * c.eps * c.f[i]) * r_min - 0.75 * hc2;
    c.mu_min = std::min(c.mu_min, c.mu[i]);
  }
  c.delta = std::expm1(c.eps * f1);
  c.area_factor = std::exp(2.0 * c.eps * f1);
  c.endpoint_h = c.H[n - 1];
  c.endpoint_p = c.P[n - 1];

  // certified invariants of the construction
  for (int i = 0; i < n; ++i) {
    if (std::fabs(c.H[i] * c.H[i] - c.P[i] * c.P[i] - hc2) >
        1e-10 * std::max(1.0, hc2)) {
      throw Error(ErrorKind::PreconditionViolated,
                  "spacetime mean curvature drifted from C^2", c.t[i]);
    }
    if (std::fabs(c.jnu[i]) > 1e-12) {
      throw Error(ErrorKind::PreconditionViolated,
                  "momentum residual exceeds tolerance", c.t[i]);
    }
  }
  if (!(c.mu_min > 0.0)) {
    throw Error(ErrorKind::DECViolation,
                "energy density lost in the reduction collar", c.mu_min);
  }
  if (std::fabs(c.endpoint_p) > 1e-10 ||
      std::fabs(c.endpoint_h - c.C) > 1e-10 * std::max(1.0, c.C)) {
    throw Error(ErrorKind::PreconditionViolated,
                "endpoint data is not (Hcal_o, 0)");
  }
  if (c.area_factor > (1.0 + delta_max) * (1.0 + delta_max) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::PreconditionViolated,
                "endpoint area factor exceeds the slack", c.area_factor);
  }
  return c;
}

double reduction_mu(const ReductionCollar& c, double t) {
  const auto& ts = c.t;
  double f;
  if (t <= ts.front()) {
    f = c.f.front();
  } else if (t >= ts.back()) {
    f = c.f.back();
  } else {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double h = ts[j + 1] - ts[j];
    const double w = (t - ts[j]) / h;
    const double h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w);
    const double h10 = w * (1.0 - w) * (1.0 - w);
    const double h01 = w * w * (3.0 - 2.0 * w);
    const double h11 = w * w * (w - 1.0);
    f = h00 * c.f[j] + h * h10 * c.fp[j] + h01 * c.f[j + 1] +
        h * h11 * c.fp[j + 1];
  }
  return 0.5 * std::exp(-2.0 * c.eps * f) * c.r_min - 0.75 * c.C * c.C;
}

}  // namespace bartnik
