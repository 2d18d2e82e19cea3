#include "bartnik/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bartnik/error.hpp"
#include "bartnik/smoothstep.hpp"

namespace bartnik {

const char* piece_kind_name(PieceKind kind) {
  switch (kind) {
    case PieceKind::Collar: return "collar";
    case PieceKind::Glue: return "glue";
    case PieceKind::Bend: return "bend";
    case PieceKind::Schwarzschild: return "schwarzschild";
  }
  return "?";
}

double leaf_hcal2(const CurveSample& c, const RadialField& x) {
  const double xv = x.x(c.f);
  return 4.0 / (c.f * c.f) * (c.fp * c.fp - xv * xv);
}

double leaf_hawking(const CurveSample& c, const RadialField& x) {
  const double xv = x.x(c.f);
  return 0.5 * c.f * (1.0 + xv * xv - c.fp * c.fp);
}

namespace {

Curve shifted(const Curve& base, double shift) {
  Curve c;
  c.lo = base.lo + shift;
  c.hi = base.hi + shift;
  Curve inner = base;
  c.eval = [inner, shift](double s) { return inner(s - shift); };
  return c;
}

void audit_joint(ExtensionAudits& audits, const Piece& a, const Piece& b) {
  const CurveSample la = a.curve(a.hi);
  const CurveSample lb = b.curve(b.lo);
  JointDefect j;
  j.s = a.hi;
  j.df = std::fabs(la.f - lb.f);
  j.dfp = std::fabs(la.fp - lb.fp);
  audits.joints.push_back(j);
  audits.max_joint_df = std::max(audits.max_joint_df, j.df);
  audits.max_joint_dfp = std::max(audits.max_joint_dfp, j.dfp);
  if (j.df > 1e-10 || j.dfp > 1e-8) {
    throw Error(ErrorKind::PreconditionViolated,
                "joint continuity defect exceeds tolerance", a.hi);
  }
}

void audit_exterior(ExtensionReport& rep, const Piece& piece, int n = 2001) {
  const double m = rep.exterior_mass;
  const RadialField& x = *piece.field;
  const double h = (piece.hi - piece.lo) / (n - 1);
  std::vector<double> f(n);
  for (int i = 0; i < n; ++i) f[i] = piece.curve(piece.lo + i * h).f;
  double worst = 0.0, drift = 0.0;
  for (int i = 2; i < n - 2; ++i) {
    const double fd =
        (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    worst = std::max(worst, std::fabs(fd * fd - v_of(x, m, f[i])));
    const CurveSample c = piece.curve(piece.lo + i * h);
    drift = std::max(drift, std::fabs(leaf_hawking(c, x) - m));
  }
  rep.audits.exterior_isometry = worst;
  rep.audits.exterior_mass_drift = drift;
}

void build_grid(ExtensionReport& rep, const AssembleOptions& opts) {
  rep.grid.clear();
  const CollarSlab& slab = rep.collar;
  const double A = slab.constants.A;
  const double m1 = rep.pieces.size() > 1 ? rep.pieces[0].hi : A;

  // collar rows come from the leaves (their mu carries the true path
  // curvature terms); later pieces are spherically symmetric and use the
  // round-leaf formulas
  for (const CollarLeaf& leaf : slab.leaves) {
    const double sigma = A * leaf.s;
    if (sigma > m1) break;
    CompositeRow row;
    row.piece = PieceKind::Collar;
    row.s = sigma;
    row.f = leaf.u;
    row.fp = slab.constants.k *
             std::sqrt(v_of(*slab.base, slab.constants.m_bar, leaf.u));
    row.mu = leaf.mu;
    row.m_h = leaf.m_H;
    row.hcal2 = leaf.hcal2;
    rep.grid.push_back(row);
  }
  double total = 0.0;
  for (std::size_t p = 1; p < rep.pieces.size(); ++p) {
    total += rep.pieces[p].hi - rep.pieces[p].lo;
  }
  for (std::size_t p = 1; p < rep.pieces.size(); ++p) {
    const Piece& piece = rep.pieces[p];
    const double len = piece.hi - piece.lo;
    const int n = std::max(
        32, static_cast<int>(opts.composite_points * len / total));
    for (int i = 1; i <= n; ++i) {
      const double s = piece.lo + len * i / n;
      const CurveSample c = piece.curve(s);
      CompositeRow row;
      row.piece = piece.kind;
      row.s = s;
      row.f = c.f;
      row.fp = c.fp;
      row.mu = mu_of_sample(c, *piece.field);
      row.m_h = leaf_hawking(c, *piece.field);
      row.hcal2 = leaf_hcal2(c, *piece.field);
      rep.grid.push_back(row);
    }
  }
}

}  // namespace

ExtensionReport glue_to_schwarzschild(CollarSlab collar, double m,
                                      const AssembleOptions& opts) {
  const BartnikData& d = collar.data;
  const CollarConstants& cc = collar.constants;
  if (!(cc.A > 0.0)) {
    throw Error(ErrorKind::Infeasible,
                "degenerate zero-length collar cannot be glued", cc.A);
  }
  const double f_b = collar.end().u;
  const double m_h_b = collar.end().m_H;
  const Curve collar_curve = collar.arclength_curve();
  const double fp_b = collar_curve(cc.A).fp;

  if (!(f_b > 2.0 * m_h_b)) {
    throw Error(ErrorKind::PreconditionViolated,
                "collar end violates f(b) > 2 m_H(b)", f_b);
  }
  if (!(m > m_h_b && m < 0.5 * f_b)) {
    throw Error(ErrorKind::MassOutOfRange,
                "exterior mass must lie in (m_H(b), f(b)/2)", m);
  }

  auto profile = collar.scaled;  // D x, shared by collar tail and exterior
  const double r_max = std::max(opts.exterior_radius_factor * f_b,
                                2.0 * f_b);

  // monotonicity hypotheses on the gluing range
  {
    const MonotonicityReport mono = check_monotonicity(
        *profile, m_h_b, 2.0 * m_h_b * (1.0 + 1e-12), r_max);
    if (!mono.v_increasing) {
      throw Error(ErrorKind::PreconditionViolated,
                  "V_{x,m_H(b)} not strictly increasing past the horizon",
                  mono.witness_v);
    }
    const MonotonicityReport mono_g =
        check_monotonicity(*profile, m_h_b, f_b, r_max);
    if (!mono_g.g_nondecreasing) {
      throw Error(ErrorKind::PreconditionViolated,
                  "G_x not non-decreasing beyond the collar", mono_g.witness_g);
    }
    // slope bound at the collar end and its V' formulation must agree
    const bool slope_ok = fp_b > 0.0 && fp_b < std::sqrt(1.0 + g_of(*profile,
                                                                    f_b));
    const bool vprime_ok = v_of_deriv(*profile, m_h_b, f_b) > 0.0;
    if (!slope_ok || !vprime_ok) {
      throw Error(ErrorKind::PreconditionViolated,
                  "collar end slope condition failed", fp_b);
    }
  }

  auto table = std::make_shared<const GraphTable>(
      build_graph_table(*profile, m, r_max));
  const Curve exterior = make_graph_curve(table, profile);

  const double s_hat = arclength_from_horizon(*profile, m, f_b);
  const double up_hat = std::sqrt(v_of(*profile, m, f_b));
  const double gap = fp_b - up_hat;
  if (!(gap > 0.0)) {
    throw Error(ErrorKind::PreconditionViolated,
                "slope gap u'(s-hat) < f'(b) failed", gap);
  }

  const double h_ref = d.r_o / 2000.0;
  double eps = opts.eps_offset_steps * h_ref;
  // the bend point needs a strict slope margin below f'(b)
  for (int i = 0;; ++i) {
    if (i > 60) {
      throw Error(ErrorKind::DeltaExhausted,
                  "could not place s_o with a slope margin", s_hat);
    }
    const double s_try = s_hat + eps;
    if (s_try < table->s.back() && exterior(s_try).fp < fp_b * (1.0 - 1e-10)) {
      break;
    }
    eps *= 0.5;
  }

  const double a1 = (1.0 - collar.freeze_eps) * cc.A;
  const double b1 = cc.A;

  ExtensionReport rep;
  rep.exterior_mass = m;
  rep.s_hat = s_hat;

  // retry ladder mirroring the proof: if the d-scheme fails, move s_o
  // toward s-hat and re-run the bend and glue
  int retries = 0;
  for (;; ++retries, eps *= 0.5) {
    if (retries > opts.max_trapped_retries) {
      throw Error(ErrorKind::TrappedSurfaceFound,
                  "glue-window d-scheme failed after retries", s_hat);
    }
    const double s_o = s_hat + eps;
    const double kappa =
        std::min(0.05, 0.5 * (fp_b / exterior(s_o).fp - 1.0));
    BendResult bend_res = bend(exterior, 0.0, s_o, 0.0, profile,
                               BendConstraints{f_b, fp_b}, kappa);
    const double a2 = s_o - bend_res.delta;
    const double b2 = s_o - bend_res.delta / 8.0;

    GlueJob job;
    job.left = collar_curve;
    job.a1 = a1;
    job.b1 = b1;
    job.right = bend_res.bent;
    job.a2 = a2;
    job.b2 = b2;
    job.profile = profile;
    job.zeta_width = opts.zeta_width;
    GlueResult glue_res = glue(job);

    // trapped-surface d-scheme on the glue window
    const double d_t = (1.0 - 2.0 * m / f_b) / 3.0;
    const double u_a2 = bend_res.bent(a2).f;
    double sup_x2 = 0.0;
    for (int i = 0; i < 512; ++i) {
      const double r = f_b + (u_a2 - f_b) * i / 511.0;
      const double xv = profile->x(r);
      sup_x2 = std::max(sup_x2, xv * xv);
    }
    const double x_fb2 = profile->x(f_b) * profile->x(f_b);
    const double x_ua2 = profile->x(u_a2) * profile->x(u_a2);
    const double margin1 = x_fb2 + d_t - sup_x2;
    const double margin2 =
        (1.0 - 2.0 * m / u_a2 + x_ua2) - sup_x2 - d_t;
    if (margin1 >= 0.0 && margin2 >= 0.0) {
      rep.audits.trapped_d_margin = std::min(margin1, margin2);
      rep.audits.trapped_retries = retries;
      rep.glue_cert = glue_res.cert;
      rep.bend_rec = BendRecord{s_o, bend_res.delta, bend_res.kappa,
                                bend_res.min_correction, gap};

      const double shift = glue_res.shift;
      Piece collar_piece{PieceKind::Collar, 0.0, glue_res.m1, collar_curve,
                         profile};
      Piece glue_piece{PieceKind::Glue, glue_res.m1, glue_res.m2,
                       glue_res.glued, profile};
      Piece bend_piece{PieceKind::Bend, glue_res.m2, s_o + shift,
                       shifted(bend_res.bent, shift), profile};
      Piece ext_piece{PieceKind::Schwarzschild, s_o + shift,
                      table->s.back() + shift, shifted(exterior, shift),
                      profile};
      rep.pieces = {collar_piece, glue_piece, bend_piece, ext_piece};
      break;
    }
  }

  rep.collar = std::move(collar);
  for (std::size_t p = 0; p + 1 < rep.pieces.size(); ++p) {
    audit_joint(rep.audits, rep.pieces[p], rep.pieces[p + 1]);
  }
  audit_exterior(rep, rep.pieces.back());

  double min_margin = std::numeric_limits<double>::infinity();
  double min_f2m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.collar.leaves.size(); ++i) {
    const CollarLeaf& leaf = rep.collar.leaves[i];
    min_margin = std::min(min_margin, leaf.dec_margin);
    if (i > 0) {
      min_f2m = std::min(min_f2m, (leaf.u - 2.0 * leaf.m_H) -
                                      (rep.collar.leaves[i - 1].u -
                                       2.0 * rep.collar.leaves[i - 1].m_H));
    }
  }
  rep.audits.dec_min_margin = min_margin;
  rep.audits.min_f_minus_2mh = min_f2m;

  build_grid(rep, opts);
  return rep;
}

namespace {

ExtensionReport run_pipeline(CollarSlab slab, const AssembleOptions& opts) {
  const BartnikData d = slab.data;
  const double m_o = hawking_mass_of_data(d);
  const double f_b = slab.end().u;
  const double m_h_b = slab.end().m_H;
  if (!(f_b - 2.0 * m_h_b > d.r_o - 2.0 * m_o - 1e-12)) {
    throw Error(ErrorKind::PreconditionViolated,
                "f(end) - 2 m_H(end) did not grow along the collar", f_b);
  }
  if (!(opts.eta > 0.0 && opts.eta < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "eta must lie in (0, 1)", opts.eta);
  }
  const double m = m_h_b + opts.eta * (0.5 * f_b - m_h_b);
  ExtensionReport rep = glue_to_schwarzschild(std::move(slab), m, opts);
  rep.audits.min_hcal2 = trapped_audit(rep);
  return rep;
}

}  // namespace

ExtensionReport assemble_extension(const BartnikData& d,
                                   const PathDescriptor& path,
                                   const ProfileFunction& x,
                                   const AssembleOptions& opts) {
  CollarOptions copts;
  copts.grid_points = opts.grid_points;
  copts.exec = opts.exec;
  return run_pipeline(build_collar(d, path, x, copts), opts);
}

ExtensionReport assemble_simple_extension(const BartnikData& d,
                                          const PathDescriptor& path,
                                          const AssembleOptions& opts) {
  CollarOptions copts;
  copts.grid_points = opts.grid_points;
  copts.exec = opts.exec;
  return run_pipeline(build_simple_collar(d, path, copts), opts);
}

ExtensionReport assemble_cmc(const BartnikData& d, const PathDescriptor& path,
                             double K2, double K1,
                             const AssembleOptions& opts) {
  const RoundnessConstants rc = roundness_constants(path);
  const CmcFeasibility feas = cmc_feasibility(d, rc, K2, K1);
  if (!feas.all()) {
    throw Error(ErrorKind::Infeasible,
                "constant-mean-curvature feasibility conditions fail");
  }
  const ProfileFunction x = ProfileFunction::cmc(K2, K1, d.r_o);
  ExtensionReport rep = assemble_extension(d, path, x, opts);
  const double denom = std::fabs(K2 * std::pow(d.r_o, 3) - K1);
  rep.cmc_value = 3.0 * std::pow(d.r_o, 3) * std::fabs(d.P_o) * K2 /
                  (2.0 * denom);
  return rep;
}

double trapped_audit(const ExtensionReport& report, int points_per_piece) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Piece& piece : report.pieces) {
    if (piece.kind == PieceKind::Collar) {
      // the collar leaves carry the exact foliation values
      const double A = report.collar.constants.A;
      for (const CollarLeaf& leaf : report.collar.leaves) {
        if (leaf.s == 0.0) continue;
        if (A * leaf.s > piece.hi) break;
        if (!(leaf.hcal2 > 0.0)) {
          throw Error(ErrorKind::TrappedSurfaceFound,
                      "collar leaf with non-positive Hcal^2", leaf.s);
        }
        worst = std::min(worst, leaf.hcal2);
      }
      continue;
    }
    for (int i = 0; i < points_per_piece; ++i) {
      const double s =
          piece.lo + (piece.hi - piece.lo) * i / (points_per_piece - 1.0);
      if (s <= 0.0) continue;
      const double h2 = leaf_hcal2(piece.curve(s), *piece.field);
      if (!(h2 > 0.0)) {
        throw Error(ErrorKind::TrappedSurfaceFound,
                    "leaf with non-positive Hcal^2 in the assembly", s);
      }
      worst = std::min(worst, h2);
    }
  }
  return worst;
}

namespace {

class BlendedField : public RadialField {
 public:
  BlendedField(std::shared_ptr<const RadialField> a, ProfileFunction b,
               double r0, double r1)
      : a_(std::move(a)), b_(std::move(b)), r0_(r0), r1_(r1) {}

  double chi(double r) const {
    return 1.0 - smoothstep((r - r0_) / (r1_ - r0_));
  }
  double chi_d1(double r) const {
    return -smoothstep_d1((r - r0_) / (r1_ - r0_)) / (r1_ - r0_);
  }
  double chi_d2(double r) const {
    return -smoothstep_d2((r - r0_) / (r1_ - r0_)) /
           ((r1_ - r0_) * (r1_ - r0_));
  }

  double x(double r) const override {
    return chi(r) * a_->x(r) + (1.0 - chi(r)) * b_.x(r);
  }
  double xp(double r) const override {
    return chi_d1(r) * (a_->x(r) - b_.x(r)) + chi(r) * a_->xp(r) +
           (1.0 - chi(r)) * b_.xp(r);
  }
  double xpp(double r) const override {
    return chi_d2(r) * (a_->x(r) - b_.x(r)) +
           2.0 * chi_d1(r) * (a_->xp(r) - b_.xp(r)) + chi(r) * a_->xpp(r) +
           (1.0 - chi(r)) * b_.xpp(r);
  }

 private:
  std::shared_ptr<const RadialField> a_;
  ProfileFunction b_;
  double r0_, r1_;
};

}  // namespace

void taper_profile(ExtensionReport& report, double r_switch,
                   const ProfileFunction& target,
                   const AssembleOptions& opts) {
  Piece& ext = report.pieces.back();
  if (ext.kind != PieceKind::Schwarzschild) {
    throw Error(ErrorKind::PreconditionViolated,
                "taper needs an exterior graph piece");
  }
  const double r_at_start = ext.curve(ext.lo).f;
  if (!(r_switch > r_at_start)) {
    throw Error(ErrorKind::PreconditionViolated,
                "r_switch must lie beyond the glue window", r_switch);
  }

  // identity taper leaves the exterior untouched bit-exactly
  bool identity = true;
  for (int i = 0; i < 32 && identity; ++i) {
    const double r = r_switch + (1.2 * r_switch) * i / 31.0;
    if (target.x(r) != ext.field->x(r)) identity = false;
  }
  if (identity) {
    report.taper = TaperRecord{r_switch, true, 0.0, 0.0};
    return;
  }

  const double m = report.exterior_mass;
  if (!(r_switch < ext.curve(ext.hi).f)) {
    throw Error(ErrorKind::PreconditionViolated,
                "r_switch beyond the solved exterior; raise the radius factor",
                r_switch);
  }
  // anchor the switch on the piece itself so the junction is exact
  double s_lo = ext.lo, s_hi = ext.hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (s_lo + s_hi);
    if (ext.curve(mid).f < r_switch) {
      s_lo = mid;
    } else {
      s_hi = mid;
    }
  }
  const double s_switch = 0.5 * (s_lo + s_hi);
  const double u_switch = ext.curve(s_switch).f;
  {
    const CurveSample at = ext.curve(s_switch);
    if (!(mu_of_sample(at, *ext.field) > -1e-11) ||
        !(leaf_hcal2(at, *ext.field) > 0.0)) {
      throw Error(ErrorKind::DECViolation, "audit fails at the switch radius",
                  r_switch);
    }
  }

  auto blended = std::make_shared<const BlendedField>(
      ext.field, target, r_switch, 2.0 * r_switch);
  const double v0 = v_of(*blended, m, u_switch);
  const double span = 1.4 * r_switch / std::max(0.25, std::sqrt(v0));
  OdeOptions ode;
  ode.h_out = span / 4000.0;
  auto sol = std::make_shared<const RadialSolution>(
      solve_forward(*blended, m, u_switch, s_switch, span, ode));
  Curve tapered = make_solution_curve(sol, blended, 1.0, s_switch);

  TaperRecord record;
  record.r_switch = r_switch;
  record.identity = false;
  record.mu_min = std::numeric_limits<double>::infinity();
  record.hcal2_min = std::numeric_limits<double>::infinity();
  const int n = 2001;
  for (int i = 0; i < n; ++i) {
    const double s = s_switch + (tapered.hi - s_switch) * i / (n - 1.0);
    const CurveSample c = tapered(s);
    const double mu = mu_of_sample(c, *blended);
    const double h2 = leaf_hcal2(c, *blended);
    record.mu_min = std::min(record.mu_min, mu);
    record.hcal2_min = std::min(record.hcal2_min, h2);
    if (mu < -1e-11) {
      throw Error(ErrorKind::DECViolation,
                  "energy density lost in the taper window", c.f);
    }
    if (!(h2 > 0.0)) {
      throw Error(ErrorKind::TrappedSurfaceFound,
                  "Hcal^2 lost in the taper window", c.f);
    }
  }

  ext.hi = s_switch;
  Piece taper_piece{PieceKind::Schwarzschild, s_switch, tapered.hi, tapered,
                    blended};
  report.pieces.push_back(taper_piece);
  report.taper = record;
  build_grid(report, opts);
}

}  // namespace bartnik
