#include "bartnik/mass_bounds.hpp"

#include <cmath>
#include <limits>

#include "bartnik/error.hpp"

namespace bartnik {

std::vector<double> hawking_along(const std::vector<double>& f,
                                  const std::vector<double>& fp,
                                  const RadialField& x) {
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double xv = x.x(f[i]);
    m[i] = 0.5 * f[i] * (1.0 + xv * xv - fp[i] * fp[i]);
  }
  return m;
}

std::vector<double> hawking_along(const CollarSlab& slab) {
  std::vector<double> m(slab.leaves.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = slab.leaves[i].m_H;
  return m;
}

double bound51(const BartnikData& d, const RoundnessConstants& rc) {
  validate_data(d);
  const double hr = d.H_o * d.H_o * d.r_o * d.r_o;
  const double margin = rc.beta / (rc.alpha + 1.0) - 0.25 * hr;
  if (!(margin > 0.0)) {
    throw Error(ErrorKind::HypothesisFailed,
                "H_o^2 r_o^2 / 4 < beta/(alpha+1) fails", margin);
  }
  const double m_h0 = hawking_mass_of_data(d);
  if (rc.alpha == 0.0) return m_h0;
  return m_h0 + d.H_o * d.r_o * d.r_o * std::sqrt(rc.alpha) * (4.0 - hr) /
                    (8.0 * std::sqrt(4.0 * rc.beta - (rc.alpha + 1.0) * hr));
}

double bound62(const BartnikData& d, const RoundnessConstants& rc,
                   std::optional<double> r_gamma_min) {
  validate_data(d);
  const double hc2 = d.hcal2();
  const double hr = hc2 * d.r_o * d.r_o;
  const double margin = rc.beta / (1.0 + rc.alpha) - 0.25 * hr;
  if (!(margin > 0.0)) {
    throw Error(ErrorKind::HypothesisFailed,
                "Hcal^2 r_o^2 / 4 < beta/(1+alpha) fails", margin);
  }
  if (r_gamma_min && !(*r_gamma_min > 1.5 * hc2)) {
    throw Error(ErrorKind::HypothesisFailed,
                "scalar curvature bound R_gamma > (3/2) Hcal^2 fails",
                *r_gamma_min);
  }
  const double m_h0 = hawking_mass_of_data(d);
  if (rc.alpha == 0.0) return m_h0;
  const double factor =
      1.0 + std::sqrt(rc.alpha * hr / (4.0 * rc.beta - (1.0 + rc.alpha) * hr));
  return factor * m_h0;
}

MassBoundReport mass_bounds(const BartnikData& d, const PathDescriptor& path,
                            std::optional<double> r_gamma_min, bool witness) {
  const RoundnessConstants rc = roundness_constants(path);
  MassBoundReport rep;
  rep.m_h0 = hawking_mass_of_data(validate_data(d));
  const double hr = d.H_o * d.H_o * d.r_o * d.r_o;
  rep.margin51 = rc.beta / (rc.alpha + 1.0) - 0.25 * hr;
  rep.feasible51 = rep.margin51 > 0.0;
  if (rep.feasible51) rep.bound51 = bound51(d, rc);
  const double hcr = d.hcal2() * d.r_o * d.r_o;
  rep.margin62 = rc.beta / (1.0 + rc.alpha) - 0.25 * hcr;
  bool curv_ok = !r_gamma_min || *r_gamma_min > 1.5 * d.hcal2();
  rep.feasible62 = rep.margin62 > 0.0 && curv_ok;
  if (rep.feasible62) rep.bound62 = bound62(d, rc, r_gamma_min);
  if (witness && rep.feasible51) {
    const CollarSlab slab = build_simple_collar(d, path);
    rep.witness_mh1 = slab.end().m_H;
  }
  return rep;
}

std::vector<SweepRow> bound_sweep(double r_o,
                                  const std::vector<double>& h_values,
                                  const std::vector<double>& p_values,
                                  const std::vector<double>& alpha_values,
                                  const std::vector<double>& beta_values) {
  if (alpha_values.size() != beta_values.size()) {
    throw Error(ErrorKind::InvalidInput,
                "alpha and beta sweep axes must pair up");
  }
  std::vector<SweepRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double h : h_values) {
    for (double p : p_values) {
      for (std::size_t i = 0; i < alpha_values.size(); ++i) {
        const RoundnessConstants rc{alpha_values[i], beta_values[i]};
        const BartnikData d{r_o, h, p, true};
        SweepRow row{r_o, h, p, rc.alpha, rc.beta, nan, nan, nan, false,
                     false};
        try {
          row.m_h0 = hawking_mass_of_data(validate_data(d));
        } catch (const Error&) {
          rows.push_back(row);
          continue;
        }
        try {
          row.bound51 = bound51(d, rc);
          row.feasible51 = true;
        } catch (const Error&) {
        }
        try {
          row.bound62 = bound62(d, rc);
          row.feasible62 = true;
        } catch (const Error&) {
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace bartnik
