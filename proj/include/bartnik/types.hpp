#pragma once

#include <string>

namespace bartnik {

/// Constant Bartnik boundary data (r_o, H_o, P_o) with the tangential-normal
/// part of the extrinsic curvature identically zero.
struct BartnikData {
  double r_o = 1.0;  // area radius, length
  double H_o = 0.0;  // mean curvature, 1/length
  double P_o = 0.0;  // trace of K on the boundary sphere, 1/length
  bool omega_perp_zero = true;

  /// Squared spacetime mean curvature H_o^2 - P_o^2.
  double hcal2() const { return H_o * H_o - P_o * P_o; }
};

/// Path roundness constants: alpha bounds the path speed, beta the scalar
/// curvature from below, both stored for the unit-area-radius path.
struct RoundnessConstants {
  double alpha = 0.0;  // >= 0
  double beta = 1.0;   // in (0, 1]
};

/// Checks every BartnikData invariant; returns the data unchanged on
/// success, throws Error{Infeasible} naming the violated invariant.
BartnikData validate_data(const BartnikData& d);

/// Hawking mass of constant data: (r_o/2)(1 - r_o^2 (H_o^2 - P_o^2)/4).
double hawking_mass_of_data(const BartnikData& d);

}  // namespace bartnik
