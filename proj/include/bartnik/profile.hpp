#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bartnik/types.hpp"

namespace bartnik {

/// Anything that evaluates a radial profile x(r) with two derivatives.
class RadialField {
 public:
  virtual ~RadialField() = default;
  virtual double x(double r) const = 0;
  virtual double xp(double r) const = 0;
  virtual double xpp(double r) const = 0;
};

enum class ProfileKind { Constant, InverseSqrt, Cmc, SqrtTwoOverR, Custom };

struct Interval {
  double lo = 1e-9;
  double hi = 1e300;
};

/// The free radial function x(r). Presets carry closed-form derivatives;
/// tabulated profiles interpolate x with a cubic Hermite built from the
/// given slopes and take x'' from the tabulated column (linearly
/// interpolated), so inconsistent user data is observable downstream.
class ProfileFunction : public RadialField {
 public:
  static ProfileFunction constant(double value);
  static ProfileFunction inverse_sqrt(double B, double r_anchor);
  static ProfileFunction cmc(double K2, double K1, double r_anchor);
  static ProfileFunction sqrt_two_over_r(double C3, double r_anchor);
  static ProfileFunction custom(std::vector<double> r, std::vector<double> x,
                                std::vector<double> xp,
                                std::vector<double> xpp);
  static ProfileFunction custom_from_csv(const std::string& path);

  double x(double r) const override;
  double xp(double r) const override;
  double xpp(double r) const override;

  /// Same profile with x replaced by -x (sign convention for D > 0).
  ProfileFunction negated() const;

  ProfileKind kind() const { return kind_; }
  double L1() const { return L1_; }
  double L2() const { return L2_; }
  const Interval& domain() const { return domain_; }
  void set_domain(Interval d) { domain_ = d; }
  double param(int i) const { return params_[i]; }

 private:
  void check_domain(double r) const;

  ProfileKind kind_ = ProfileKind::Constant;
  double params_[2] = {0.0, 0.0};
  double L1_ = 0.0;
  double L2_ = 0.0;
  Interval domain_;
  std::vector<double> tab_r_, tab_x_, tab_xp_, tab_xpp_;
};

/// Profile with a multiplicative scale D (the second fundamental form of
/// the model class carries D * x).
class ScaledProfile : public RadialField {
 public:
  ScaledProfile() = default;
  ScaledProfile(ProfileFunction base, double scale)
      : base_(std::move(base)), scale_(scale) {}

  double x(double r) const override { return scale_ * base_.x(r); }
  double xp(double r) const override { return scale_ * base_.xp(r); }
  double xpp(double r) const override { return scale_ * base_.xpp(r); }

  double scale() const { return scale_; }
  const ProfileFunction& base() const { return base_; }
  double L1() const { return std::fabs(scale_) * base_.L1(); }
  double L2() const { return std::fabs(scale_) * base_.L2(); }

 private:
  ProfileFunction base_;
  double scale_ = 1.0;
};

/// G_x(r) = x^2 + 2 x x' r.
double g_of(const RadialField& x, double r);

/// V_{x,m}(r) = 1 - 2m/r + x^2.
double v_of(const RadialField& x, double m, double r);

/// d/dr of G and V, used by the monotonicity audits.
double g_of_deriv(const RadialField& x, double r);
double v_of_deriv(const RadialField& x, double m, double r);

struct MonotonicityReport {
  bool g_nondecreasing = true;
  bool v_increasing = true;
  double witness_g = 0.0;  // first violating radius, if any
  double witness_v = 0.0;
  double min_g_deriv = 0.0;
  double min_v_deriv = 0.0;
};

/// Grid audit of the monotonicity hypotheses: G' >= -1e-10 (non-strict) and
/// V' >= 1e-10 (strict) at n samples of [r_lo, r_hi].
MonotonicityReport check_monotonicity(const RadialField& x, double m,
                                      double r_lo, double r_hi, int n = 2001);

struct CmcFeasibility {
  bool not_both_zero = true;
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  bool cond_iv = false;
  double margin_i = 0.0;   // rhs - lhs
  double margin_ii = 0.0;
  double margin_iv = 0.0;
  bool all() const {
    return not_both_zero && cond_i && cond_ii && cond_iii && cond_iv;
  }
};

/// Conditions (i)-(iv) for a constant-mean-curvature extension with
/// x = K2 r - K1 / r^2, evaluated as stated (K2 = 0 in the limiting sense).
CmcFeasibility cmc_feasibility(const BartnikData& d,
                               const RoundnessConstants& rc, double K2,
                               double K1);

/// Constant profile large enough that P_o^2 < C2 L1^2, with the given
/// safety factor > 1. Requires H_o^2 < 4 beta / (alpha r_o^2).
ProfileFunction find_constant_profile(const BartnikData& d,
                                      const RoundnessConstants& rc,
                                      double margin = 2.0);

/// Asserts |x(r)| <= L1 + L2 r at n samples of [lo, hi].
void certify_growth_bound(const ProfileFunction& x, double lo, double hi,
                          int n = 2001);

/// Max |FD4(x) - x'| over the interval; data-quality check for tabulated
/// profiles.
double max_c1_defect(const RadialField& x, double lo, double hi, int n = 2001);

}  // namespace bartnik
