#include "bartnik/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bartnik/error.hpp"
#include "bartnik/quadrature.hpp"

namespace bartnik {

namespace {

double slope(const RadialField& x, double m, double u, double s_hint) {
  const double v = v_of(x, m, u);
  if (!(v > 0.0)) {
    throw Error(ErrorKind::DomainExit,
                "V_{x,m} became non-positive along the trajectory", s_hint);
  }
  return std::sqrt(v);
}

double rk4_step(const RadialField& x, double m, double u, double h,
                double s_hint) {
  const double k1 = slope(x, m, u, s_hint);
  const double k2 = slope(x, m, u + 0.5 * h * k1, s_hint);
  const double k3 = slope(x, m, u + 0.5 * h * k2, s_hint);
  const double k4 = slope(x, m, u + h * k3, s_hint);
  return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double advance(const RadialField& x, double m, double u, double h, double tol,
               int depth, int max_depth, double s_hint) {
  const double full = rk4_step(x, m, u, h, s_hint);
  if (tol == std::numeric_limits<double>::infinity()) return full;
  const double mid = rk4_step(x, m, u, 0.5 * h, s_hint);
  const double two = rk4_step(x, m, mid, 0.5 * h, s_hint);
  const double err = std::fabs(two - full) / 15.0;
  if (err <= tol * std::fabs(h) * (1.0 + std::fabs(two))) {
    return two + (two - full) / 15.0;
  }
  if (depth >= max_depth) {
    throw Error(ErrorKind::StepFailure,
                "RK4 step-halving failed to meet tolerance", s_hint);
  }
  const double half =
      advance(x, m, u, 0.5 * h, tol, depth + 1, max_depth, s_hint);
  return advance(x, m, half, 0.5 * h, tol, depth + 1, max_depth, s_hint);
}

}  // namespace

RadialSolution solve_forward(const RadialField& x, double m, double u0,
                             double s0, double s_span, const OdeOptions& opts) {
  if (!(s_span > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "s_span must be positive", s_span);
  }
  const double v0 = v_of(x, m, u0);
  if (!(v0 > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "V_{x,m}(u0) must be positive",
                u0);
  }
  const double h = opts.h_out > 0.0 ? opts.h_out : s_span / 2000.0;
  const std::size_t n = static_cast<std::size_t>(std::ceil(s_span / h - 1e-9));

  RadialSolution sol;
  sol.m = m;
  sol.s.reserve(n + 1);
  sol.u.reserve(n + 1);
  sol.up.reserve(n + 1);
  sol.upp.reserve(n + 1);

  double u = u0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = s0 + std::min(i * h, s_span);
    sol.s.push_back(s);
    sol.u.push_back(u);
    sol.up.push_back(slope(x, m, u, s));
    sol.upp.push_back(0.5 * v_of_deriv(x, m, u));
    if (i == n) break;
    const double step = std::min(h, s0 + s_span - s);
    const double tol = opts.richardson
                           ? opts.tol
                           : std::numeric_limits<double>::infinity();
    u = advance(x, m, u, step, tol, 0, opts.max_depth, s);
  }
  return sol;
}

double RadialSolution::radius_at(double s_query) const {
  if (s_query <= s.front()) return u.front();
  if (s_query >= s.back()) return u.back();
  const auto it = std::upper_bound(s.begin(), s.end(), s_query);
  const std::size_t j = static_cast<std::size_t>(it - s.begin()) - 1;
  const double h = s[j + 1] - s[j];
  const double t = (s_query - s[j]) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return h00 * u[j] + h * h10 * up[j] + h01 * u[j + 1] + h * h11 * up[j + 1];
}

double arclength_of_v(const std::function<double(double)>& v, double r_lo,
                      double r_hi, bool sqrt_sub, double rel_tol) {
  if (r_hi <= r_lo) return 0.0;
  // reject interior zeros first; the quadrature would silently mis-handle
  // an improper interior singularity
  const int scan_n = 2048;
  for (int i = 1; i <= scan_n; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / scan_n;
    if (!(v(r) > 0.0)) {
      throw Error(ErrorKind::Divergent,
                  "V has a zero in the integration interval", r);
    }
  }
  if (sqrt_sub) {
    // rho = r_lo + tau^2 neutralizes a sqrt endpoint zero of V at r_lo
    auto integrand = [&](double tau) {
      const double rho = r_lo + tau * tau;
      return 2.0 * tau / std::sqrt(v(rho));
    };
    return integrate_adaptive(integrand, 0.0, std::sqrt(r_hi - r_lo), rel_tol,
                              1e-14);
  }
  auto integrand = [&](double rho) { return 1.0 / std::sqrt(v(rho)); };
  return integrate_adaptive(integrand, r_lo, r_hi, rel_tol, 1e-14);
}

double arclength_from_horizon(const RadialField& x, double m, double r,
                              double rel_tol) {
  if (!(m > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "mass must be positive", m);
  }
  if (r < 2.0 * m) {
    throw Error(ErrorKind::OutOfDomain, "radius below the horizon 2m", r);
  }
  if (r == 2.0 * m) return 0.0;
  auto v = [&](double rho) { return v_of(x, m, rho); };
  return arclength_of_v(v, 2.0 * m, r, /*sqrt_sub=*/true, rel_tol);
}

double find_radius_crossing(const RadialField& x, double m, double target_r,
                            double rel_tol) {
  return arclength_from_horizon(x, m, target_r, rel_tol);
}

GraphTable build_graph_table(const RadialField& x, double m, double r_hi,
                             int n) {
  if (!(m > 0.0) || !(r_hi > 2.0 * m)) {
    throw Error(ErrorKind::InvalidInput, "graph table needs m > 0, r_hi > 2m");
  }
  GraphTable table;
  table.m = m;
  table.s.resize(n);
  table.rho.resize(n);
  const double lo = 2.0 * m;
  auto v = [&](double rho) { return v_of(x, m, rho); };
  for (int j = 0; j < n; ++j) {
    table.rho[j] = lo + (r_hi - lo) * j / (n - 1.0);
  }
  table.s[0] = 0.0;
  // first cell with the sqrt substitution, later cells plain panels
  table.s[1] = arclength_of_v(v, lo, table.rho[1], true, 1e-12);
  for (int j = 2; j < n; ++j) {
    double err = 0.0;
    auto integrand = [&](double rho) { return 1.0 / std::sqrt(v(rho)); };
    double cell = gk15_panel(integrand, table.rho[j - 1], table.rho[j], &err);
    if (err > 1e-12 * std::fabs(cell) + 1e-15) {
      cell = arclength_of_v(v, table.rho[j - 1], table.rho[j], false, 1e-13);
    }
    table.s[j] = table.s[j - 1] + cell;
  }
  return table;
}

Curve make_graph_curve(std::shared_ptr<const GraphTable> table,
                       std::shared_ptr<const RadialField> x) {
  Curve c;
  c.lo = table->s.front();
  c.hi = table->s.back();
  const double m = table->m;
  c.eval = [table, x, m](double s) {
    const auto& sv = table->s;
    const auto& rv = table->rho;
    double rho;
    if (s <= sv.front()) {
      rho = rv.front();
    } else if (s >= sv.back()) {
      rho = rv.back();
    } else {
      const auto it = std::upper_bound(sv.begin(), sv.end(), s);
      const std::size_t j = static_cast<std::size_t>(it - sv.begin()) - 1;
      const double h = sv[j + 1] - sv[j];
      const double t = (s - sv[j]) / h;
      const double d0 = std::sqrt(v_of(*x, m, rv[j]));
      const double d1 = std::sqrt(v_of(*x, m, rv[j + 1]));
      const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
      const double h10 = t * (1.0 - t) * (1.0 - t);
      const double h01 = t * t * (3.0 - 2.0 * t);
      const double h11 = t * t * (t - 1.0);
      rho = h00 * rv[j] + h * h10 * d0 + h01 * rv[j + 1] + h * h11 * d1;
    }
    CurveSample out;
    out.f = rho;
    out.fp = std::sqrt(v_of(*x, m, rho));
    out.fpp = 0.5 * v_of_deriv(*x, m, rho);
    return out;
  };
  return c;
}

Curve make_solution_curve(std::shared_ptr<const RadialSolution> sol,
                          std::shared_ptr<const RadialField> x, double k,
                          double s_offset) {
  if (!(k > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "solution curve needs k > 0", k);
  }
  Curve c;
  const double m = sol->m;
  c.lo = s_offset;
  c.hi = s_offset + (sol->s.back() - sol->s.front()) / k;
  c.eval = [sol, x, k, m, s_offset](double s) {
    const double tau = sol->s.front() + k * (s - s_offset);
    CurveSample out;
    out.f = sol->radius_at(tau);
    out.fp = k * std::sqrt(v_of(*x, m, out.f));
    out.fpp = 0.5 * k * k * v_of_deriv(*x, m, out.f);
    return out;
  };
  return c;
}

}  // namespace bartnik
