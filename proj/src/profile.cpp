#include "bartnik/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bartnik/error.hpp"

namespace bartnik {

namespace {

std::size_t bracket(const std::vector<double>& xs, double v) {
  if (v <= xs.front()) return 0;
  if (v >= xs.back()) return xs.size() - 2;
  const auto it = std::upper_bound(xs.begin(), xs.end(), v);
  return static_cast<std::size_t>(it - xs.begin()) - 1;
}

}  // namespace

void ProfileFunction::check_domain(double r) const {
  if (!(r >= domain_.lo && r <= domain_.hi)) {
    throw Error(ErrorKind::OutOfDomain, "radius outside working interval", r);
  }
}

ProfileFunction ProfileFunction::constant(double value) {
  ProfileFunction p;
  p.kind_ = ProfileKind::Constant;
  p.params_[0] = value;
  p.L1_ = std::fabs(value);
  p.L2_ = 0.0;
  return p;
}

ProfileFunction ProfileFunction::inverse_sqrt(double B, double r_anchor) {
  if (!(r_anchor > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "r_anchor must be positive");
  }
  ProfileFunction p;
  p.kind_ = ProfileKind::InverseSqrt;
  p.params_[0] = B;
  p.L1_ = std::fabs(B) / std::sqrt(r_anchor);
  p.L2_ = 0.0;
  return p;
}

ProfileFunction ProfileFunction::cmc(double K2, double K1, double r_anchor) {
  if (!(r_anchor > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "r_anchor must be positive");
  }
  ProfileFunction p;
  p.kind_ = ProfileKind::Cmc;
  p.params_[0] = K2;
  p.params_[1] = K1;
  p.L1_ = std::fabs(K1) / (r_anchor * r_anchor);
  p.L2_ = std::fabs(K2);
  return p;
}

ProfileFunction ProfileFunction::sqrt_two_over_r(double C3, double r_anchor) {
  if (!(r_anchor > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "r_anchor must be positive");
  }
  ProfileFunction p;
  p.kind_ = ProfileKind::SqrtTwoOverR;
  p.params_[0] = C3;
  p.L1_ = std::fabs(C3) * std::sqrt(2.0 / r_anchor);
  p.L2_ = 0.0;
  return p;
}

ProfileFunction ProfileFunction::custom(std::vector<double> r,
                                        std::vector<double> x,
                                        std::vector<double> xp,
                                        std::vector<double> xpp) {
  const std::size_t n = r.size();
  if (n < 4 || x.size() != n || xp.size() != n || xpp.size() != n) {
    throw Error(ErrorKind::InvalidInput, "custom profile table malformed");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(r[i + 1] > r[i])) {
      throw Error(ErrorKind::InvalidInput,
                  "custom profile radii must be strictly increasing", r[i]);
    }
  }
  ProfileFunction p;
  p.kind_ = ProfileKind::Custom;
  p.domain_ = Interval{r.front(), r.back()};
  double l1 = 0.0;
  for (double v : x) l1 = std::max(l1, std::fabs(v));
  p.L1_ = l1;
  p.L2_ = 0.0;
  p.tab_r_ = std::move(r);
  p.tab_x_ = std::move(x);
  p.tab_xp_ = std::move(xp);
  p.tab_xpp_ = std::move(xpp);
  return p;
}

ProfileFunction ProfileFunction::custom_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::InvalidInput, "cannot open profile CSV: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::InvalidInput, "empty profile CSV: " + path);
  }
  std::vector<double> r, x, xp, xpp;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    double cols[4];
    char comma;
    for (int c = 0; c < 4; ++c) {
      if (!(ss >> cols[c])) {
        throw Error(ErrorKind::InvalidInput, "bad row in profile CSV: " + line);
      }
      if (c < 3) ss >> comma;
    }
    r.push_back(cols[0]);
    x.push_back(cols[1]);
    xp.push_back(cols[2]);
    xpp.push_back(cols[3]);
  }
  return custom(std::move(r), std::move(x), std::move(xp), std::move(xpp));
}

ProfileFunction ProfileFunction::negated() const {
  ProfileFunction p = *this;
  p.params_[0] = -p.params_[0];
  p.params_[1] = -p.params_[1];
  for (double& v : p.tab_x_) v = -v;
  for (double& v : p.tab_xp_) v = -v;
  for (double& v : p.tab_xpp_) v = -v;
  return p;
}

double ProfileFunction::x(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Constant:
      return params_[0];
    case ProfileKind::InverseSqrt:
      return params_[0] / std::sqrt(r);
    case ProfileKind::Cmc:
      return params_[0] * r - params_[1] / (r * r);
    case ProfileKind::SqrtTwoOverR:
      return params_[0] * std::sqrt(2.0 / r);
    case ProfileKind::Custom: {
      const std::size_t i = bracket(tab_r_, r);
      const double h = tab_r_[i + 1] - tab_r_[i];
      const double t = (r - tab_r_[i]) / h;
      const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
      const double h10 = t * (1.0 - t) * (1.0 - t);
      const double h01 = t * t * (3.0 - 2.0 * t);
      const double h11 = t * t * (t - 1.0);
      return h00 * tab_x_[i] + h * h10 * tab_xp_[i] + h01 * tab_x_[i + 1] +
             h * h11 * tab_xp_[i + 1];
    }
  }
  return 0.0;
}

double ProfileFunction::xp(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Constant:
      return 0.0;
    case ProfileKind::InverseSqrt:
      return -0.5 * params_[0] / (r * std::sqrt(r));
    case ProfileKind::Cmc:
      return params_[0] + 2.0 * params_[1] / (r * r * r);
    case ProfileKind::SqrtTwoOverR:
      return -0.5 * params_[0] * std::sqrt(2.0 / r) / r;
    case ProfileKind::Custom: {
      const std::size_t i = bracket(tab_r_, r);
      const double h = tab_r_[i + 1] - tab_r_[i];
      const double t = (r - tab_r_[i]) / h;
      const double d00 = 6.0 * t * (t - 1.0) / h;
      const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
      const double d01 = -d00;
      const double d11 = t * (3.0 * t - 2.0);
      return d00 * tab_x_[i] + d10 * tab_xp_[i] + d01 * tab_x_[i + 1] +
             d11 * tab_xp_[i + 1];
    }
  }
  return 0.0;
}

double ProfileFunction::xpp(double r) const {
  check_domain(r);
  switch (kind_) {
    case ProfileKind::Constant:
      return 0.0;
    case ProfileKind::InverseSqrt:
      return 0.75 * params_[0] / (r * r * std::sqrt(r));
    case ProfileKind::Cmc:
      return -6.0 * params_[1] / (r * r * r * r);
    case ProfileKind::SqrtTwoOverR:
      return 0.75 * params_[0] * std::sqrt(2.0 / r) / (r * r);
    case ProfileKind::Custom: {
      const std::size_t i = bracket(tab_r_, r);
      const double t = (r - tab_r_[i]) / (tab_r_[i + 1] - tab_r_[i]);
      return (1.0 - t) * tab_xpp_[i] + t * tab_xpp_[i + 1];
    }
  }
  return 0.0;
}

double g_of(const RadialField& x, double r) {
  const double xv = x.x(r);
  return xv * xv + 2.0 * xv * x.xp(r) * r;
}

double v_of(const RadialField& x, double m, double r) {
  if (!(r > 0.0)) {
    throw Error(ErrorKind::OutOfDomain, "radius must be positive", r);
  }
  const double xv = x.x(r);
  return 1.0 - 2.0 * m / r + xv * xv;
}

double g_of_deriv(const RadialField& x, double r) {
  const double xv = x.x(r), xpv = x.xp(r), xppv = x.xpp(r);
  return 4.0 * xv * xpv + 2.0 * r * (xpv * xpv + xv * xppv);
}

double v_of_deriv(const RadialField& x, double m, double r) {
  return 2.0 * m / (r * r) + 2.0 * x.x(r) * x.xp(r);
}

MonotonicityReport check_monotonicity(const RadialField& x, double m,
                                      double r_lo, double r_hi, int n) {
  constexpr double kTolG = -1e-10;
  constexpr double kTolV = 1e-10;
  MonotonicityReport rep;
  rep.min_g_deriv = std::numeric_limits<double>::infinity();
  rep.min_v_deriv = std::numeric_limits<double>::infinity();
  const double h = (r_hi - r_lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double r = r_lo + i * h;
    const double gd = g_of_deriv(x, r);
    const double vd = v_of_deriv(x, m, r);
    if (gd < rep.min_g_deriv) rep.min_g_deriv = gd;
    if (vd < rep.min_v_deriv) rep.min_v_deriv = vd;
    if (gd < kTolG && rep.g_nondecreasing) {
      rep.g_nondecreasing = false;
      rep.witness_g = r;
    }
    if (vd < kTolV && rep.v_increasing) {
      rep.v_increasing = false;
      rep.witness_v = r;
    }
  }
  return rep;
}

CmcFeasibility cmc_feasibility(const BartnikData& d,
                               const RoundnessConstants& rc, double K2,
                               double K1) {
  CmcFeasibility rep;
  if (K1 == 0.0 && K2 == 0.0) {
    rep.not_both_zero = false;
    rep.cond_i = rep.cond_ii = rep.cond_iii = rep.cond_iv = false;
    return rep;
  }
  const double r_o = d.r_o;
  const double hc2 = d.hcal2();
  const double m_o = hawking_mass_of_data(d);
  const double alpha = rc.alpha;
  const double beta = rc.beta;
  const double inf = std::numeric_limits<double>::infinity();

  // (i), (ii): K2 = 0 is read in the limiting sense (e^{K2}-1)^2 -> K2^2.
  double rhs_i, rhs_ii;
  if (K2 == 0.0) {
    rhs_i = alpha > 0.0 ? 4.0 * beta / (r_o * r_o * alpha) : inf;
    const double xo = -K1 / (r_o * r_o);
    const double num = (4.0 * beta - alpha * r_o * r_o * hc2) * xo * xo;
    const double den =
        r_o * r_o *
        (1.0 + alpha * (r_o * r_o + K1 * K1 / std::pow(r_o, 4)));
    rhs_ii = num / den;
  } else {
    const double e1 = std::expm1(K2);  // e^{K2} - 1
    rhs_i = alpha > 0.0
                ? 4.0 * K2 * K2 * beta / (r_o * r_o * alpha * e1 * e1)
                : inf;
    const double xo = K2 * r_o - K1 / (r_o * r_o);
    const double num =
        (4.0 * beta * K2 * K2 - alpha * e1 * e1 * r_o * r_o * hc2) * xo * xo;
    const double den =
        r_o * r_o *
        (K2 * K2 + alpha * (K2 * K2 * std::exp(2.0 * K2) * r_o * r_o +
                            e1 * e1 * K1 * K1 / std::pow(r_o, 4)));
    rhs_ii = num / den;
  }
  rep.margin_i = rhs_i - hc2;
  rep.cond_i = hc2 <= rhs_i;
  rep.margin_ii = rhs_ii - d.P_o * d.P_o;
  rep.cond_ii = d.P_o * d.P_o <= rhs_ii;

  rep.cond_iii = (K1 != K2 * r_o * r_o * r_o);

  const double lhs_iv = (K1 - 2.0 * m_o * m_o * m_o * K2);
  const double rhs_iv =
      4.0 * std::pow(m_o, 4) * (1.0 + 9.0 * K2 * K2 * m_o * m_o);
  rep.margin_iv = rhs_iv - lhs_iv * lhs_iv;
  rep.cond_iv = rep.margin_iv >= 0.0;
  return rep;
}

ProfileFunction find_constant_profile(const BartnikData& d,
                                      const RoundnessConstants& rc,
                                      double margin) {
  if (!(margin > 1.0)) {
    throw Error(ErrorKind::InvalidInput, "margin must exceed 1", margin);
  }
  const double r_o = d.r_o;
  const double denom = 4.0 * rc.beta - rc.alpha * r_o * r_o * d.H_o * d.H_o;
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::Infeasible,
                "constant-profile hypothesis fails: 4 beta <= alpha r_o^2 H_o^2",
                denom);
  }
  const double L1_sq = margin * d.P_o * d.P_o * r_o * r_o / denom;
  return ProfileFunction::constant(std::sqrt(L1_sq));
}

void certify_growth_bound(const ProfileFunction& x, double lo, double hi,
                          int n) {
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double r = lo + i * h;
    const double bound = x.L1() + x.L2() * r;
    if (std::fabs(x.x(r)) > bound * (1.0 + 1e-12) + 1e-14) {
      throw Error(ErrorKind::InvalidInput,
                  "declared growth bound |x| <= L1 + L2 r violated", r);
    }
  }
}

double max_c1_defect(const RadialField& x, double lo, double hi, int n) {
  const double h = (hi - lo) / (n - 1);
  double worst = 0.0;
  for (int i = 2; i < n - 2; ++i) {
    const double r = lo + i * h;
    const double fd = (-x.x(r + 2 * h) + 8.0 * x.x(r + h) - 8.0 * x.x(r - h) +
                       x.x(r - 2 * h)) /
                      (12.0 * h);
    worst = std::max(worst, std::fabs(fd - x.xp(r)));
  }
  return worst;
}

}  // namespace bartnik
