#pragma once

#include <optional>
#include <vector>

#include "bartnik/collar.hpp"
#include "bartnik/profile.hpp"
#include "bartnik/types.hpp"

namespace bartnik {

/// Hawking mass along an arclength grid, m(s) = (f/2)(1 + x(f)^2 - f'^2).
std::vector<double> hawking_along(const std::vector<double>& f,
                                  const std::vector<double>& fp,
                                  const RadialField& x);
std::vector<double> hawking_along(const CollarSlab& slab);

/// Upper bound from the simplified collar:
/// m_H(0) + H_o r_o^2 sqrt(alpha) (4 - H_o^2 r_o^2)
///          / (8 sqrt(4 beta - (alpha+1) H_o^2 r_o^2)).
/// Requires H_o^2 r_o^2 / 4 < beta / (alpha + 1).
double bound51(const BartnikData& d, const RoundnessConstants& rc);

/// Upper bound from the reduction to time symmetry:
/// (1 + sqrt(alpha r_o^2 Hcal^2 / (4 beta - (1+alpha) r_o^2 Hcal^2))) m_H(0).
/// Requires Hcal^2 r_o^2 / 4 < beta/(1+alpha) and, when supplied,
/// R_gamma > (3/2) Hcal^2.
double bound62(const BartnikData& d, const RoundnessConstants& rc,
                   std::optional<double> r_gamma_min = {});

struct MassBoundReport {
  double m_h0 = 0.0;
  bool feasible51 = false;
  double margin51 = 0.0;  // beta/(alpha+1) - H_o^2 r_o^2/4
  std::optional<double> bound51;
  bool feasible62 = false;
  double margin62 = 0.0;  // beta/(1+alpha) - Hcal^2 r_o^2/4
  std::optional<double> bound62;
  std::optional<double> witness_mh1;  // end-of-collar mass of a built collar
};

/// Evaluates both bounds with hypothesis margins; optionally constructs the
/// simplified collar and records its end Hawking mass as a witness.
MassBoundReport mass_bounds(const BartnikData& d, const PathDescriptor& path,
                            std::optional<double> r_gamma_min = {},
                            bool witness = false);

struct SweepRow {
  double r_o, H_o, P_o, alpha, beta;
  double m_h0;
  double bound51, bound62;  // NaN when infeasible
  bool feasible51, feasible62;
};

std::vector<SweepRow> bound_sweep(double r_o,
                                  const std::vector<double>& h_values,
                                  const std::vector<double>& p_values,
                                  const std::vector<double>& alpha_values,
                                  const std::vector<double>& beta_values);

}  // namespace bartnik
