#pragma once

#include <vector>

#include "bartnik/types.hpp"

namespace bartnik {

/// Cylinder S^2 x [0,1] connecting the data to time-symmetric data at
/// constant spacetime mean curvature. The ansatz carries
/// g = eps^2 dt^2 + e^{2 eps f} gamma, K = eps^2 b dt^2 + a e^{2 eps f} gamma
/// with H = 2 f', P = 2 a and H^2 - P^2 held at C^2 = Hcal_o^2.
struct ReductionCollar {
  double eps = 0.0;      // collar thickness parameter
  double C = 0.0;        // = Hcal_o
  double r_min = 0.0;    // min scalar curvature of gamma
  double delta = 0.0;    // endpoint area slack, e^{eps f(1)} - 1
  std::vector<double> t, a, b, f, fp, H, P, mu, jnu;
  double mu_min = 0.0;
  double area_factor = 0.0;  // e^{2 eps f(1)}
  double endpoint_h = 0.0;
  double endpoint_p = 0.0;
};

/// Builds the reduction collar. The momentum constraint is forced to zero
/// by b = a + a'/(eps f'), and eps is solved in closed form from the area
/// slack and the energy-density constraints.
ReductionCollar build_reduction(const BartnikData& d, double r_min,
                                double delta_max, int grid_points = 2001);

/// mu(t) = (1/2) e^{-2 eps f(t)} Rmin - (3/4) C^2.
double reduction_mu(const ReductionCollar& c, double t);

}  // namespace bartnik
