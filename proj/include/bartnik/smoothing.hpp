#pragma once

#include <memory>
#include <optional>

#include "bartnik/curve.hpp"
#include "bartnik/profile.hpp"

namespace bartnik {

/// Upper barrier for the second derivative: data of the spherically
/// symmetric form has mu > 0 iff f'' < Omega[f], where
/// Omega[f] = (1 - f'^2 + x(f)^2 + 2 x(f) x'(f) f) / (2 f).
double omega_bound(double f, double fp, const RadialField& x);

/// Energy density of a spherically symmetric sample (round path, unit
/// lapse): mu = 2 (Omega[f] - f'') / f.
double mu_of_sample(const CurveSample& c, const RadialField& x);

/// Interval translation of the gluing construction. Returns the ramp
/// length l = a2 - b1: Df / p1 for equal slopes, else the geometric mean
/// of the admissible extremes (Df/p1, Df/p2). Throws Error{Infeasible} on
/// slope ordering violations or a non-positive gap.
double translate_intervals(double f1b, double p1, double f2a, double p2);

/// Non-increasing interpolant zeta(s) = p2 + (p1 - p2) S((tau0 - s)/w)
/// with zeta(b1) = p1, zeta(a2) = p2 and integral Df, the transition
/// center tau0 found by bisection.
struct ZetaRamp {
  double b1 = 0.0, a2 = 0.0;
  double p1 = 0.0, p2 = 0.0;
  double f1b = 0.0;   // value at b1
  double tau0 = 0.0;
  double w = 0.0;
  double integral_residual = 0.0;

  double zeta(double s) const;
  double zeta_deriv(double s) const;
  /// f1b + int_{b1}^{s} zeta
  double value(double s) const;
};

ZetaRamp build_zeta(double b1, double f1b, double p1, double ramp_len,
                    double f2a, double p2, double width_frac = 0.25);

/// C^{1,1} concatenation: left piece | zeta ramp | right piece, with the
/// right piece's own coordinate shifted by `shift`.
struct HatFunction {
  Curve left;
  double a1 = 0.0, b1 = 0.0;
  ZetaRamp ramp;
  Curve right;
  double a2 = 0.0, b2 = 0.0;
  double shift = 0.0;

  CurveSample eval(double s) const;
};

struct GlueCertificate {
  double d = 0.0;           // inf(Omega[fhat] - fhat'')/3 over the pieces
  double epsilon = 0.0;     // accepted mollification radius
  double delta = 0.0;       // cutoff half-width
  double tau0 = 0.0;        // zeta transition center
  double ramp_len = 0.0;
  double min_margin = 0.0;  // min over audit grid of Omega[f_eps] - f_eps''
  double max_domega = 0.0;  // sup |Omega[fhat] - Omega[f_eps]|
  double zeta_residual = 0.0;
};

struct MollifyResult {
  Curve smooth;   // on [a1, b2]; equals fhat outside (m1, m2) bit-exactly
  double m1 = 0.0, m2 = 0.0;
  GlueCertificate cert;
};

/// Mollifies the concatenation with the cutoff-modulated convolution
/// f_eps(s) = int fhat(s - eps eta(s) t) phi(t) dt, halving eps from
/// delta/8 until the closeness and second-derivative bounds certify.
/// Throws Error{EpsilonExhausted} past 30 halvings.
MollifyResult mollify(const HatFunction& hat,
                      std::shared_ptr<const RadialField> profile,
                      double delta = 0.0, int audit_points = 4001);

struct GlueJob {
  Curve left;
  double a1 = 0.0, b1 = 0.0;
  Curve right;                 // in its own coordinates
  double a2 = 0.0, b2 = 0.0;   // before translation
  std::shared_ptr<const RadialField> profile;
  double zeta_width = 0.25;
  double delta = 0.0;          // mollifier cutoff; 0 = auto
  double mu_floor = 0.0;       // hypothesis (i) audit threshold
};

struct GlueResult {
  Curve glued;    // on [a1, b2_final]
  double shift = 0.0;
  double b1 = 0.0, a2 = 0.0, b2 = 0.0;
  double m1 = 0.0, m2 = 0.0;
  GlueCertificate cert;
};

/// Full gluing construction: hypothesis audit, interval translation,
/// zeta interpolation and mollification.
GlueResult glue(const GlueJob& job);

struct BendConstraints {
  double c_floor = 0.0;
  double slope_cap = 0.0;
};

struct BendResult {
  Curve bent;       // equals the base curve for s >= s_o, bit-exactly
  double s_o = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
  double min_bracket = 0.0;  // min over the window of 8 f f'/y - (2+th) Q
  double min_correction = 0.0;

  double theta(double s) const;
  double sigma(double s) const;
};

/// Compactly supported reparametrization f -> f(sigma(s)) raising the
/// energy density strictly on [s_o - delta, s_o). The bump has quartic
/// contact, theta = kappa ((s_o - s)/delta)^4, so the strict margin stays
/// representable on audit grids; sigma' stays in [1, 1 + kappa] and
/// sigma(s) = s on [s_o, infinity). A positive delta_cap starts the window
/// search below the default.
BendResult bend(const Curve& base, double a, double s_o, double tau,
                std::shared_ptr<const RadialField> profile,
                const std::optional<BendConstraints>& constraints = {},
                double kappa = 0.05, int audit_points = 2001,
                double delta_cap = 0.0);

}  // namespace bartnik
