#include "bartnik/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bartnik/error.hpp"
#include "bartnik/quadrature.hpp"
#include "bartnik/smoothstep.hpp"

namespace bartnik {

double omega_bound(double f, double fp, const RadialField& x) {
  if (!(f > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "omega_bound needs f > 0", f);
  }
  const double xv = x.x(f);
  return (1.0 - fp * fp + xv * xv + 2.0 * xv * x.xp(f) * f) / (2.0 * f);
}

double mu_of_sample(const CurveSample& c, const RadialField& x) {
  return 2.0 * (omega_bound(c.f, c.fp, x) - c.fpp) / c.f;
}

double translate_intervals(double f1b, double p1, double f2a, double p2) {
  const double gap = f2a - f1b;
  if (!(gap > 0.0)) {
    throw Error(ErrorKind::Infeasible, "gluing needs f1(b1) < f2(a2)", gap);
  }
  if (!(p1 > 0.0)) {
    throw Error(ErrorKind::Infeasible, "gluing needs f1'(b1) > 0", p1);
  }
  if (p2 > p1) {
    throw Error(ErrorKind::Infeasible,
                "slope ordering f2'(a2) <= f1'(b1) violated", p2);
  }
  if (std::fabs(p1 - p2) <= 1e-13 * std::max(1.0, std::fabs(p1))) {
    return gap / p1;
  }
  if (p2 <= 0.0) {
    return 2.0 * gap / p1;
  }
  // strict sandwich: any length in (gap/p1, gap/p2) works; place the
  // interval at the geometric mean of the admissible extremes
  return gap / std::sqrt(p1 * p2);
}

double ZetaRamp::zeta(double s) const {
  if (w == 0.0) return p1;
  return p2 + (p1 - p2) * smoothstep((tau0 - s) / w);
}

double ZetaRamp::zeta_deriv(double s) const {
  if (w == 0.0) return 0.0;
  return -(p1 - p2) / w * smoothstep_d1((tau0 - s) / w);
}

double ZetaRamp::value(double s) const {
  if (w == 0.0) return f1b + p1 * (s - b1);
  const double lo = tau0 - w;
  if (s <= lo) return f1b + p1 * (s - b1);
  double acc = f1b + p1 * (lo - b1);
  const double hi = std::min(s, tau0);
  acc += gl64([&](double t) { return zeta(t); }, lo, hi);
  if (s > tau0) acc += p2 * (s - tau0);
  return acc;
}

ZetaRamp build_zeta(double b1, double f1b, double p1, double ramp_len,
                    double f2a, double p2, double width_frac) {
  ZetaRamp ramp;
  ramp.b1 = b1;
  ramp.a2 = b1 + ramp_len;
  ramp.p1 = p1;
  ramp.p2 = p2;
  ramp.f1b = f1b;
  const double gap = f2a - f1b;

  if (std::fabs(p1 - p2) <= 1e-13 * std::max(1.0, std::fabs(p1))) {
    ramp.w = 0.0;
    ramp.tau0 = b1;
    ramp.integral_residual = gap - p1 * ramp_len;
    return ramp;
  }

  double w = width_frac * ramp_len;
  auto integral = [&](double tau0) {
    ZetaRamp trial = ramp;
    trial.w = w;
    trial.tau0 = tau0;
    return trial.value(trial.a2) - f1b;
  };
  int shrink = 0;
  for (;; ++shrink) {
    if (shrink > 60) {
      throw Error(ErrorKind::ShapeInfeasible,
                  "zeta transition width collapsed without a bracket", w);
    }
    const double lo_int = integral(b1 + w);
    const double hi_int = integral(ramp.a2);
    if (lo_int < gap && gap < hi_int) break;
    w *= 0.5;
  }
  ramp.w = w;

  double lo = b1 + w, hi = ramp.a2;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double res = integral(mid) - gap;
    if (std::fabs(res) <= 1e-12 * std::max(std::fabs(gap), 1e-30)) {
      ramp.tau0 = mid;
      ramp.integral_residual = res;
      return ramp;
    }
    if (res < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  ramp.tau0 = 0.5 * (lo + hi);
  ramp.integral_residual = integral(ramp.tau0) - gap;
  if (std::fabs(ramp.integral_residual) >
      1e-10 * std::max(std::fabs(gap), 1e-30)) {
    throw Error(ErrorKind::ShapeInfeasible,
                "zeta integral constraint did not converge",
                ramp.integral_residual);
  }
  return ramp;
}

CurveSample HatFunction::eval(double s) const {
  if (s <= b1) return left(s);
  if (s < a2) {
    return CurveSample{ramp.value(s), ramp.zeta(s), ramp.zeta_deriv(s)};
  }
  return right(s - shift);
}

namespace {

// Smoothstep-based cutoff: 1 on [b1-delta, a2+delta], 0 outside (m1, m2).
struct Cutoff {
  double m1, r1, r2, m2;  // 0 | rise | 1 | fall | 0

  double eta(double s) const {
    if (s <= m1 || s >= m2) return 0.0;
    if (s < r1) return smoothstep((s - m1) / (r1 - m1));
    if (s <= r2) return 1.0;
    return smoothstep((m2 - s) / (m2 - r2));
  }
  double eta_d1(double s) const {
    if (s <= m1 || s >= m2) return 0.0;
    if (s < r1) return smoothstep_d1((s - m1) / (r1 - m1)) / (r1 - m1);
    if (s <= r2) return 0.0;
    return -smoothstep_d1((m2 - s) / (m2 - r2)) / (m2 - r2);
  }
  double eta_d2(double s) const {
    if (s <= m1 || s >= m2) return 0.0;
    if (s < r1) {
      const double w = r1 - m1;
      return smoothstep_d2((s - m1) / w) / (w * w);
    }
    if (s <= r2) return 0.0;
    const double w = m2 - r2;
    return smoothstep_d2((m2 - s) / w) / (w * w);
  }
};

struct MollifierState {
  HatFunction hat;
  Cutoff cutoff;
  double epsilon = 0.0;

  CurveSample eval(double s) const {
    const double eta = cutoff.eta(s);
    if (eta == 0.0) return hat.eval(s);
    const double ep = cutoff.eta_d1(s);
    const double epp = cutoff.eta_d2(s);
    const double radius = epsilon * eta;

    // split the t-integral at the kink preimages so every Gauss panel sees
    // a smooth integrand
    std::vector<double> cuts{-1.0, 1.0};
    for (double kink : {hat.b1, hat.a2}) {
      const double t_star = (s - kink) / radius;
      if (t_star > -1.0 + 1e-14 && t_star < 1.0 - 1e-14) {
        cuts.push_back(t_star);
      }
    }
    std::sort(cuts.begin(), cuts.end());

    double i0 = 0.0, i1 = 0.0, i2 = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const GaussLegendre64& rule = gauss_legendre_64();
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
      const double half = 0.5 * (cuts[c + 1] - cuts[c]);
      if (half <= 0.0) continue;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = mid + half * rule.nodes[q];
        const double wgt = half * rule.weights[q] * mollifier(t);
        const CurveSample h = hat.eval(s - radius * t);
        const double jac = 1.0 - epsilon * ep * t;
        i0 += wgt * h.f;
        i1 += wgt * h.fp * jac;
        i2 += wgt * (h.fpp * jac * jac - h.fp * epsilon * epp * t);
      }
    }
    return CurveSample{i0, i1, i2};
  }
};

double hat_margin(const HatFunction& hat, const RadialField& x, double s) {
  const CurveSample c = hat.eval(s);
  return omega_bound(c.f, c.fp, x) - c.fpp;
}

// sup of fhat'' over [s - eps, s + eps], by sampling; enough for the
// one-sided bound because fhat'' is piecewise smooth with two jumps
double local_sup_fpp(const HatFunction& hat, double s, double eps, double lo,
                     double hi) {
  double sup = -std::numeric_limits<double>::infinity();
  const int n = 33;
  for (int i = 0; i < n; ++i) {
    double t = s - eps + 2.0 * eps * i / (n - 1);
    t = std::clamp(t, lo, hi);
    sup = std::max(sup, hat.eval(t).fpp);
  }
  for (double kink : {hat.b1, hat.a2}) {
    if (kink > s - eps && kink < s + eps) {
      sup = std::max(sup, hat.eval(kink - 1e-13 * (hi - lo)).fpp);
      sup = std::max(sup, hat.eval(kink + 1e-13 * (hi - lo)).fpp);
    }
  }
  return sup;
}

}  // namespace

MollifyResult mollify(const HatFunction& hat,
                      std::shared_ptr<const RadialField> profile,
                      double delta, int audit_points) {
  const RadialField& x = *profile;
  const double a1 = hat.a1, b1 = hat.b1, a2 = hat.a2, b2 = hat.b2;
  const double m1 = 0.5 * (a1 + b1);
  const double m2 = 0.5 * (a2 + b2);

  const double delta_cap = 0.25 * std::min(b1 - a1, b2 - a2);
  if (delta <= 0.0 || delta > delta_cap) delta = delta_cap;

  // d > 0 from the infimum of Omega[fhat] - fhat'' off the kinks
  double inf_margin = std::numeric_limits<double>::infinity();
  auto scan_piece = [&](double lo, double hi) {
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
      const double s = lo + (hi - lo) * i / (n - 1.0);
      inf_margin = std::min(inf_margin, hat_margin(hat, x, s));
    }
  };
  scan_piece(a1, b1);
  scan_piece(std::nextafter(b1, b2), std::nextafter(a2, a1));
  scan_piece(a2, b2);
  if (!(inf_margin > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated,
                "concatenation violates f'' < Omega[f] off the kinks",
                inf_margin);
  }
  const double d = inf_margin / 3.0;

  MollifierState state;
  state.hat = hat;
  state.cutoff = Cutoff{m1, b1 - delta, a2 + delta, m2};

  double eps = delta / 8.0;
  for (int halvings = 0; halvings <= 30; ++halvings, eps *= 0.5) {
    state.epsilon = eps;
    bool ok = true;
    double max_domega = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < audit_points && ok; ++i) {
      const double s = a1 + (b2 - a1) * i / (audit_points - 1.0);
      const double eta = state.cutoff.eta(s);
      if (eta == 0.0) {
        min_margin = std::min(min_margin, hat_margin(hat, x, s));
        continue;
      }
      const CurveSample smooth = state.eval(s);
      const CurveSample raw = hat.eval(s);
      const double omega_raw = omega_bound(raw.f, raw.fp, x);
      const double omega_smooth = omega_bound(smooth.f, smooth.fp, x);
      max_domega = std::max(max_domega, std::fabs(omega_raw - omega_smooth));
      if (max_domega >= d) ok = false;
      const double sup_fpp = local_sup_fpp(hat, s, eps, a1, b2);
      if (!(smooth.fpp < sup_fpp + d)) ok = false;
      const double margin = omega_smooth - smooth.fpp;
      min_margin = std::min(min_margin, margin);
      if (!(margin > 0.0)) ok = false;
    }
    if (ok) {
      MollifyResult out;
      out.m1 = m1;
      out.m2 = m2;
      out.cert.d = d;
      out.cert.epsilon = eps;
      out.cert.delta = delta;
      out.cert.tau0 = hat.ramp.tau0;
      out.cert.ramp_len = a2 - b1;
      out.cert.min_margin = min_margin;
      out.cert.max_domega = max_domega;
      out.cert.zeta_residual = hat.ramp.integral_residual;
      auto shared = std::make_shared<MollifierState>(state);
      out.smooth.lo = a1;
      out.smooth.hi = b2;
      out.smooth.eval = [shared](double s) { return shared->eval(s); };
      return out;
    }
  }
  throw Error(ErrorKind::EpsilonExhausted,
              "mollification failed to certify down to delta * 2^-30", eps);
}

GlueResult glue(const GlueJob& job) {
  const RadialField& x = *job.profile;

  // hypothesis (i): positive energy density on both pieces
  auto audit_mu = [&](const Curve& c, double lo, double hi, const char* side) {
    const int n = 1001;
    for (int i = 0; i < n; ++i) {
      const double s = lo + (hi - lo) * i / (n - 1.0);
      if (!(mu_of_sample(c(s), x) > job.mu_floor)) {
        throw Error(ErrorKind::PreconditionViolated,
                    std::string("gluing needs mu > 0 on the ") + side +
                        " piece",
                    s);
      }
    }
  };
  audit_mu(job.left, job.a1, job.b1, "left");
  audit_mu(job.right, job.a2, job.b2, "right");

  const CurveSample lend = job.left(job.b1);
  const CurveSample rstart = job.right(job.a2);
  const double f1b = lend.f, p1 = lend.fp;
  const double f2a = rstart.f, p2 = rstart.fp;

  // (iii): 0 < f1'(b1) < sqrt(1 + G_x(f1(b1)))
  const double cap = std::sqrt(1.0 + g_of(x, f1b));
  if (!(p1 > 0.0 && p1 < cap)) {
    throw Error(ErrorKind::Infeasible,
                "slope bound 0 < f1'(b1) < sqrt(1 + G_x) violated", p1);
  }
  // (v): G_x monotone non-decreasing across the gap
  {
    const int n = 512;
    for (int i = 0; i < n; ++i) {
      const double r = f1b + (f2a - f1b) * i / (n - 1.0);
      if (g_of_deriv(x, r) < -1e-10) {
        throw Error(ErrorKind::Infeasible,
                    "G_x not non-decreasing on the gluing gap", r);
      }
    }
  }

  const double ramp_len = translate_intervals(f1b, p1, f2a, p2);
  const double a2_final = job.b1 + ramp_len;
  const double shift = a2_final - job.a2;

  HatFunction hat;
  hat.left = job.left;
  hat.a1 = job.a1;
  hat.b1 = job.b1;
  hat.ramp = build_zeta(job.b1, f1b, p1, ramp_len, f2a, p2, job.zeta_width);
  hat.right = job.right;
  hat.a2 = a2_final;
  hat.b2 = job.b2 + shift;
  hat.shift = shift;

  MollifyResult smooth = mollify(hat, job.profile, job.delta);

  GlueResult out;
  out.glued = smooth.smooth;
  out.shift = shift;
  out.b1 = job.b1;
  out.a2 = a2_final;
  out.b2 = hat.b2;
  out.m1 = smooth.m1;
  out.m2 = smooth.m2;
  out.cert = smooth.cert;
  return out;
}

namespace {

struct BendState {
  Curve base;
  double s_o, delta, kappa;

  double theta(double s) const {
    if (s >= s_o || s < s_o - delta) return 0.0;
    const double y = (s_o - s) / delta;
    return kappa * y * y * y * y;
  }
  double sigma(double s) const {
    if (s >= s_o) return s;
    const double y = s_o - s;
    return s - kappa * y * y * y * y * y / (5.0 * delta * delta * delta *
                                            delta);
  }
  CurveSample eval(double s) const {
    if (s >= s_o) return base(s);
    const double y = s_o - s;
    const double th = theta(s);
    const double sdot = 1.0 + th;
    const double sddot =
        -4.0 * kappa * y * y * y / (delta * delta * delta * delta);
    const CurveSample b = base(sigma(s));
    return CurveSample{b.f, b.fp * sdot, b.fpp * sdot * sdot + b.fp * sddot};
  }
};

}  // namespace

double BendResult::theta(double s) const {
  if (s >= s_o || s < s_o - delta) return 0.0;
  const double y = (s_o - s) / delta;
  return kappa * y * y * y * y;
}

double BendResult::sigma(double s) const {
  if (s >= s_o) return s;
  const double y = s_o - s;
  return s -
         kappa * y * y * y * y * y / (5.0 * delta * delta * delta * delta);
}

BendResult bend(const Curve& base, double a, double s_o, double tau,
                std::shared_ptr<const RadialField> profile,
                const std::optional<BendConstraints>& constraints,
                double kappa, int audit_points, double delta_cap) {
  const RadialField& x = *profile;
  if (!(s_o > a)) {
    throw Error(ErrorKind::PreconditionViolated, "bend needs s_o > a", s_o);
  }
  const CurveSample at_so = base(s_o);
  if (!(at_so.fp > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated, "bend needs f'(s_o) > 0",
                at_so.fp);
  }
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorKind::InvalidInput, "kappa must lie in (0, 1]", kappa);
  }

  double delta = std::min(0.5 * (s_o - a), 0.1 * s_o);
  if (delta_cap > 0.0) delta = std::min(delta, delta_cap);
  if (constraints && !(at_so.fpp > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated,
                "bend constraints need f''(s_o) > 0", at_so.fpp);
  }
  // the precondition mu >= tau is audited on the widest window the search
  // can touch
  {
    const int n = 1001;
    const double lo = std::max(a, s_o - 2.0 * delta);
    for (int i = 0; i < n; ++i) {
      const double s = lo + (s_o - lo) * i / (n - 1.0);
      if (mu_of_sample(base(s), x) < tau - 1e-11) {
        throw Error(ErrorKind::PreconditionViolated,
                    "bend precondition mu >= tau fails on the window", s);
      }
    }
  }

  for (; delta >= 1e-12 * s_o; delta *= 0.5) {
    // the slope cap only admits a bump amplitude below the natural slope
    // drop f''(s_o) delta, so kappa shrinks with the window
    const double kap =
        constraints
            ? std::min(kappa, 0.45 * at_so.fpp * delta / at_so.fp)
            : kappa;
    BendState st{base, s_o, delta, kap};
    bool ok = true;
    double min_bracket = std::numeric_limits<double>::infinity();
    double min_corr = std::numeric_limits<double>::infinity();
    for (int i = 0; i < audit_points && ok; ++i) {
      // nodes cover [s_o - delta, s_o), excluding the contact point itself
      const double s =
          s_o - delta + delta * i / static_cast<double>(audit_points);
      const double y = s_o - s;
      const double th = st.theta(s);
      const CurveSample b = base(st.sigma(s));
      const double q = b.fp * b.fp + 2.0 * b.f * b.fpp;
      const double bracket = 8.0 * b.f * b.fp / y - (2.0 + th) * q;
      min_bracket = std::min(min_bracket, bracket);
      min_corr = std::min(min_corr, th * bracket / (b.f * b.f));
      if (!(bracket > 0.0)) ok = false;
      // headroom at the worst node, y = delta
      if (i == 0 && !(bracket > 0.5 * (8.0 * b.f * b.fp / y))) ok = false;
    }
    if (ok && !(kap > 0.0)) ok = false;
    if (ok && constraints) {
      const CurveSample edge = st.eval(s_o - delta);
      if (!(edge.f > constraints->c_floor)) ok = false;
      if (!(edge.fp < std::min(at_so.fp, constraints->slope_cap))) ok = false;
    }
    if (ok) {
      BendResult out;
      out.s_o = s_o;
      out.delta = delta;
      out.kappa = kap;
      out.min_bracket = min_bracket;
      out.min_correction = min_corr;
      auto st_shared = std::make_shared<BendState>(st);
      out.bent.lo = s_o - delta;
      out.bent.hi = base.hi;
      out.bent.eval = [st_shared](double s) { return st_shared->eval(s); };
      return out;
    }
  }
  throw Error(ErrorKind::DeltaExhausted,
              "bend window collapsed below 1e-12 s_o", s_o);
}

}  // namespace bartnik
