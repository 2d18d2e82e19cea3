#include "bartnik/types.hpp"

#include <cmath>

#include "bartnik/error.hpp"

namespace bartnik {

BartnikData validate_data(const BartnikData& d) {
  if (!(d.r_o > 0.0) || !std::isfinite(d.r_o)) {
    throw Error(ErrorKind::Infeasible, "r_o must be positive", d.r_o);
  }
  if (!std::isfinite(d.H_o) || !std::isfinite(d.P_o)) {
    throw Error(ErrorKind::Infeasible, "H_o, P_o must be finite");
  }
  if (d.P_o == 0.0) {
    throw Error(ErrorKind::Infeasible,
                "P_o = 0 (time-symmetric data) is outside scope");
  }
  if (!(d.H_o >= std::fabs(d.P_o))) {
    throw Error(ErrorKind::Infeasible,
                "untrapped condition H_o >= |P_o| violated (Hcal^2 < 0)");
  }
  if (!d.omega_perp_zero) {
    throw Error(ErrorKind::Infeasible, "omega_perp != 0 is outside scope");
  }
  const double hc2 = d.hcal2();
  if (hc2 > 4.0 / (d.r_o * d.r_o)) {
    throw Error(ErrorKind::Infeasible,
                "negative Hawking mass: Hcal^2 > 4/r_o^2", hc2);
  }
  return d;
}

double hawking_mass_of_data(const BartnikData& d) {
  return 0.5 * d.r_o * (1.0 - 0.25 * d.r_o * d.r_o * d.hcal2());
}

}  // namespace bartnik
