#include "bartnik/collar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bartnik/error.hpp"

namespace bartnik {

double mu_block_diagonal(double f, double fp, double fpp, double A, double R_s,
                         double gamma_prime_sq, double x, double xp) {
  if (!(f > 0.0) || !(A > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated,
                "mu_block_diagonal needs f > 0 and A > 0", f);
  }
  const double f2 = f * f;
  const double A2 = A * A;
  return R_s / (2.0 * f2) - (fp * fp + 2.0 * f * fpp) / (A2 * f2) +
         (x * x + 2.0 * x * xp * f) / f2 - gamma_prime_sq / (8.0 * A2);
}

double momentum_residual(const std::vector<double>& s,
                         const std::vector<double>& f,
                         const std::vector<double>& fp, const RadialField& x) {
  const std::size_t n = s.size();
  if (n < 5 || f.size() != n || fp.size() != n) {
    throw Error(ErrorKind::InvalidInput, "momentum residual needs >= 5 nodes");
  }
  const double h = s[1] - s[0];
  std::vector<double> trk(n), divs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xv = x.x(f[i]);
    const double xpv = x.xp(f[i]);
    const double xppv = x.xpp(f[i]);
    trk[i] = xpv + 2.0 * xv / f[i];
    divs[i] = xppv * fp[i] + 2.0 * xpv * fp[i] / f[i] -
              2.0 * xv * fp[i] / (f[i] * f[i]);
  }
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d_trk =
        (-trk[i + 2] + 8.0 * trk[i + 1] - 8.0 * trk[i - 1] + trk[i - 2]) /
        (12.0 * h);
    worst = std::max(worst, std::fabs(divs[i] - d_trk));
  }
  return worst;
}

double dec_margin_leaf(double u, double k, double A,
                       const RoundnessConstants& leaf_rc) {
  const double base = 2.0 * leaf_rc.beta - 2.0 * k * k;
  if (A == 0.0) return base;
  return base - u * u * leaf_rc.alpha / (A * A);
}

namespace {

double feasibility_c1(const RoundnessConstants& rc, double L2) {
  if (rc.alpha == 0.0) return std::numeric_limits<double>::infinity();
  if (L2 == 0.0) return rc.beta / rc.alpha;
  const double e1 = std::expm1(L2);
  return rc.beta * L2 * L2 / (rc.alpha * e1 * e1);
}

double feasibility_c2(const BartnikData& d, const RoundnessConstants& rc,
                   double L1, double L2) {
  const double r2 = d.r_o * d.r_o;
  const double hc2 = d.hcal2();
  if (L2 == 0.0) {
    return (4.0 * rc.beta - rc.alpha * r2 * hc2) /
           (r2 * (1.0 + rc.alpha * L1 * L1));
  }
  const double e1 = std::expm1(L2);
  const double num = 4.0 * L2 * L2 * rc.beta - rc.alpha * e1 * e1 * r2 * hc2;
  const double den =
      r2 * L2 * L2 *
      (1.0 + rc.alpha * (std::exp(2.0 * L2) * r2 + e1 * e1 * L1 * L1 /
                                                       (L2 * L2)));
  return num / den;
}

// Collar thickness from the DEC estimate; branches on the growth bound.
double collar_thickness(const BartnikData& d, const RoundnessConstants& rc,
                        double k, double m_bar, double L1, double L2) {
  if (rc.alpha == 0.0) return 0.0;
  const double one_minus = 1.0 - 2.0 * m_bar / d.r_o;
  if (L2 == 0.0) {
    const double den =
        rc.beta - k * k * (1.0 + rc.alpha * (one_minus + L1 * L1));
    if (!(den > 0.0)) {
      throw Error(ErrorKind::Infeasible,
                  "collar thickness denominator non-positive", den);
    }
    return d.r_o * std::sqrt(rc.alpha / den);
  }
  const double e1 = std::expm1(L2);
  const double den = rc.beta - k * k;
  if (!(den > 0.0)) {
    throw Error(ErrorKind::Infeasible, "collar needs k^2 < beta", den);
  }
  const double num =
      rc.alpha * (std::exp(2.0 * L2) * d.r_o * d.r_o +
                  e1 * e1 / (L2 * L2) * (one_minus + L1 * L1));
  return std::sqrt(num / den);
}

void audit_slab(CollarSlab& slab) {
  const BartnikData& d = slab.data;
  const CollarConstants& c = slab.constants;
  const double scale = std::fabs(d.H_o) + std::fabs(d.P_o);
  const CollarLeaf& b = slab.boundary();
  if (std::fabs(b.H - d.H_o) + std::fabs(b.P - d.P_o) > 1e-10 * scale) {
    throw Error(ErrorKind::PreconditionViolated,
                "boundary data not reproduced at s = 0", b.H);
  }
  if (!slab.simple &&
      std::fabs(c.k * c.k - c.D * c.D) > 1e-12 * std::max(1.0, c.D * c.D)) {
    throw Error(ErrorKind::PreconditionViolated, "k^2 != D^2 after the mass\
 parameter choice");
  }
  for (const CollarLeaf& leaf : slab.leaves) {
    if (!(leaf.dec_margin > 0.0)) {
      throw Error(ErrorKind::DECViolation,
                  "strict DEC margin lost on a collar leaf", leaf.s);
    }
  }
  if (c.A > 0.0) {
    for (std::size_t i = 1; i < slab.leaves.size(); ++i) {
      const CollarLeaf& prev = slab.leaves[i - 1];
      const CollarLeaf& cur = slab.leaves[i];
      if (!(cur.hcal2 > 0.0)) {
        throw Error(ErrorKind::TrappedLeaf,
                    "spacetime mean curvature lost positivity", cur.s);
      }
      if (!(cur.m_H > prev.m_H)) {
        throw Error(ErrorKind::PreconditionViolated,
                    "Hawking mass not strictly increasing", cur.s);
      }
      if (!(cur.u - 2.0 * cur.m_H > prev.u - 2.0 * prev.m_H)) {
        throw Error(ErrorKind::PreconditionViolated,
                    "f - 2 m_H not strictly increasing", cur.s);
      }
    }
  }
}

CollarSlab assemble_slab(const BartnikData& d, const PathDescriptor& path,
                         const RoundnessConstants& rc,
                         const CollarConstants& c, ProfileFunction base,
                         bool simple, const CollarOptions& opts) {
  CollarSlab slab;
  slab.data = d;
  slab.rc = rc;
  slab.constants = c;
  slab.simple = simple;
  slab.freeze_eps = path.freeze_eps;
  slab.base = std::make_shared<const ProfileFunction>(std::move(base));
  slab.scaled =
      std::make_shared<const ScaledProfile>(ScaledProfile(*slab.base, c.D));

  const int n = opts.grid_points;
  if (n < 5) throw Error(ErrorKind::InvalidInput, "grid_points too small");

  if (c.A > 0.0) {
    OdeOptions ode;
    ode.h_out = c.A * c.k / (n - 1);
    slab.radius = std::make_shared<const RadialSolution>(
        solve_forward(*slab.base, c.m_bar, d.r_o, 0.0, c.A * c.k, ode));
    certify_growth_bound(*slab.base, d.r_o, slab.radius->u_end(), 512);
  } else {
    RadialSolution flat;
    flat.m = c.m_bar;
    flat.s.assign(static_cast<std::size_t>(n), 0.0);
    flat.u.assign(static_cast<std::size_t>(n), d.r_o);
    flat.up.assign(static_cast<std::size_t>(n),
                   std::sqrt(v_of(*slab.base, c.m_bar, d.r_o)));
    flat.upp.assign(static_cast<std::size_t>(n),
                    0.5 * v_of_deriv(*slab.base, c.m_bar, d.r_o));
    slab.radius = std::make_shared<const RadialSolution>(std::move(flat));
  }

  const PathLeafTable table = build_leaf_table(path, rc, opts.exec);
  slab.leaves.resize(static_cast<std::size_t>(n));
  fill_leaves(slab, table, opts.exec);
  audit_slab(slab);
  return slab;
}

}  // namespace

void fill_leaves(CollarSlab& slab, const PathLeafTable& table, Exec mode) {
  const std::size_t n = slab.leaves.size();
  const CollarConstants& c = slab.constants;
  const double k = c.k, D = c.D, A = c.A, m_bar = c.m_bar;
  const RadialField& x = *slab.base;
  parallel_for(
      n,
      [&](std::size_t i) {
        CollarLeaf& leaf = slab.leaves[i];
        leaf.s = static_cast<double>(i) / (n - 1);
        const double u = slab.radius->u[i];
        leaf.u = u;
        const double xv = x.x(u);
        const double v = v_of(x, m_bar, u);
        const double up = std::sqrt(v);
        leaf.H = 2.0 * k / u * up;
        leaf.P = 2.0 * D * xv / u;
        leaf.hcal2 = 4.0 * k * k / (u * u) * (1.0 - 2.0 * m_bar / u) +
                     4.0 * xv * xv / (u * u) * (k * k - D * D);
        leaf.m_H = 0.5 * u * (1.0 + D * D * xv * xv - k * k * v);
        const RoundnessConstants leaf_rc = sample_leaf(table, leaf.s);
        leaf.dec_margin = dec_margin_leaf(u, k, A, leaf_rc);
        if (A > 0.0) {
          const double upp = 0.5 * v_of_deriv(x, m_bar, u);
          leaf.mu = mu_block_diagonal(u, A * k * up, A * A * k * k * upp, A,
                                      2.0 * leaf_rc.beta, 4.0 * leaf_rc.alpha,
                                      D * xv, D * x.xp(u));
        } else {
          leaf.mu = leaf.dec_margin / (2.0 * u * u);
        }
      },
      mode);
}

void fill_leaves_serial(CollarSlab& slab, const PathLeafTable& table) {
  fill_leaves(slab, table, Exec::Serial);
}

CollarConstants collar_constants(const BartnikData& d,
                                 const RoundnessConstants& rc,
                                 const ProfileFunction& x) {
  validate_data(d);
  CollarConstants c;
  double x_ro = x.x(d.r_o);
  if (x_ro == 0.0) {
    throw Error(ErrorKind::ZeroProfileAtBoundary,
                "profile vanishes at the boundary radius", d.r_o);
  }
  if (d.P_o * x_ro < 0.0) {
    c.sign = -1.0;
    x_ro = -x_ro;
  }
  c.x_ro = x_ro;

  const double r_o = d.r_o;
  const double hc2 = d.hcal2();
  c.m_bar = 0.5 * r_o * (1.0 - hc2 * x_ro * x_ro / (d.P_o * d.P_o));
  // x_ro already carries the sign flip, so P_o x_ro > 0 and D > 0
  c.D = d.P_o * r_o / (2.0 * x_ro);
  const double v_ro = 1.0 - 2.0 * c.m_bar / r_o + x_ro * x_ro;
  if (!(v_ro > 0.0)) {
    throw Error(ErrorKind::Infeasible, "V at the boundary is non-positive",
                v_ro);
  }
  c.k = d.H_o * r_o / (2.0 * std::sqrt(v_ro));

  c.feasC1 = feasibility_c1(rc, x.L2());
  c.feasC2 = feasibility_c2(d, rc, x.L1(), x.L2());
  if (!(hc2 < 4.0 / (r_o * r_o) * c.feasC1)) {
    throw Error(ErrorKind::Infeasible,
                "feasibility fails: Hcal^2 >= 4 C1 / r_o^2", hc2);
  }
  if (!(d.P_o * d.P_o < c.feasC2 * x_ro * x_ro)) {
    throw Error(ErrorKind::Infeasible,
                "feasibility fails: P_o^2 >= C2 x(r_o)^2", d.P_o * d.P_o);
  }
  c.A = collar_thickness(d, rc, c.k, c.m_bar, x.L1(), x.L2());
  return c;
}

CollarSlab build_collar(const BartnikData& d, const PathDescriptor& path,
                        const ProfileFunction& x, const CollarOptions& opts) {
  const RoundnessConstants rc = roundness_constants(path, opts.exec);
  const CollarConstants c = collar_constants(d, rc, x);
  ProfileFunction base = x;
  if (c.sign < 0.0) base = base.negated();

  // the G_x-coupled term of the DEC estimate must vanish under the mass
  // parameter choice; a wiring bug here would silently corrupt the margin
  const double t = 2.0 * c.k * c.k * (1.0 - 2.0 * c.m_bar / d.r_o) -
                   0.5 * d.r_o * d.r_o * d.hcal2();
  if (std::fabs(t) > 1e-12 * std::max(1.0, d.hcal2())) {
    throw Error(ErrorKind::PreconditionViolated,
                "G_x-coupled DEC term failed to vanish", t);
  }
  return assemble_slab(d, path, rc, c, std::move(base), /*simple=*/false,
                       opts);
}

CollarSlab build_simple_collar(const BartnikData& d,
                               const PathDescriptor& path,
                               const CollarOptions& opts) {
  validate_data(d);
  const RoundnessConstants rc = roundness_constants(path, opts.exec);
  const double r_o = d.r_o;
  const double B = 0.5 * d.P_o * r_o * std::sqrt(r_o);
  ProfileFunction base = ProfileFunction::inverse_sqrt(B, r_o);

  CollarConstants c;
  c.sign = 1.0;
  c.D = 1.0;
  c.m_bar = 0.5 * B * B;
  c.k = 0.5 * d.H_o * r_o;
  c.x_ro = base.x(r_o);
  const double hyp = rc.beta - (rc.alpha + 1.0) * c.k * c.k;
  if (!(hyp > 0.0)) {
    throw Error(ErrorKind::Infeasible,
                "hypothesis H_o^2 r_o^2 / 4 < beta/(alpha+1) fails", hyp);
  }
  c.A = rc.alpha > 0.0 ? r_o * std::sqrt(rc.alpha / hyp) : 0.0;
  c.feasC1 = feasibility_c1(rc, 0.0);
  c.feasC2 = feasibility_c2(d, rc, base.L1(), 0.0);

  // sanity: V(r_o) collapses to 1 exactly for this profile and mass
  const double v_ro = v_of(base, c.m_bar, r_o);
  if (std::fabs(v_ro - 1.0) > 1e-12) {
    throw Error(ErrorKind::PreconditionViolated, "V(r_o) != 1", v_ro);
  }
  // G_x vanishes identically for x = B / sqrt(r)
  if (std::fabs(g_of(base, r_o)) > 1e-12 ||
      std::fabs(g_of(base, 2.0 * r_o)) > 1e-12) {
    throw Error(ErrorKind::PreconditionViolated, "G_x != 0 for B/sqrt(r)");
  }

  CollarSlab slab = assemble_slab(d, path, rc, c, std::move(base),
                                  /*simple=*/true, opts);
  if (!(slab.end().m_H > 0.5 * B * B)) {
    throw Error(ErrorKind::Infeasible,
                "end-of-collar Hawking mass fails m_H(1) > B^2/2",
                slab.end().m_H);
  }
  return slab;
}

Curve CollarSlab::arclength_curve() const {
  return make_solution_curve(radius, base, constants.k, 0.0);
}

}  // namespace bartnik
