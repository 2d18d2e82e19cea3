#pragma once

#include <memory>
#include <vector>

#include "bartnik/curve.hpp"
#include "bartnik/profile.hpp"

namespace bartnik {

struct OdeOptions {
  double h_out = 0.0;     // output spacing; 0 picks span/2000
  double tol = 1e-10;     // local error target per unit arclength
  bool richardson = true; // step-halving acceptance; false = fixed RK4
  int max_depth = 24;
};

/// Samples of the radial graph ODE u' = sqrt(V_{x,m}(u)). The derivative
/// columns are stored from the analytic identities u' = sqrt(V) and
/// u'' = V'/2 rather than finite differences.
struct RadialSolution {
  std::vector<double> s;
  std::vector<double> u;
  std::vector<double> up;
  std::vector<double> upp;
  double m = 0.0;

  double s_end() const { return s.back(); }
  double u_end() const { return u.back(); }

  /// Dense radius lookup, cubic Hermite between samples.
  double radius_at(double s_query) const;
};

/// Integrates forward from u(s0) = u0 over [s0, s0 + s_span]. Classical
/// RK4 with step-halving Richardson control. Throws Error{DomainExit} when
/// V <= 0 is met along the trajectory, Error{StepFailure} past max_depth.
RadialSolution solve_forward(const RadialField& x, double m, double u0,
                             double s0, double s_span,
                             const OdeOptions& opts = {});

/// Arclength of the mass-m graph from the horizon radius 2m out to r,
/// via the substitution rho = 2m + tau^2 that removes the square-root
/// endpoint singularity. Throws Error{Divergent} on an interior V-zero.
double arclength_from_horizon(const RadialField& x, double m, double r,
                              double rel_tol = 1e-9);

/// Arclength s-hat with u_m(s-hat) = target_r for the graph anchored at the
/// horizon (u_m(0) = 2m).
double find_radius_crossing(const RadialField& x, double m, double target_r,
                            double rel_tol = 1e-9);

/// Internal quadrature used by the two functions above, exposed with a
/// caller-supplied V so the Divergent branch is testable directly.
double arclength_of_v(const std::function<double(double)>& v, double r_lo,
                      double r_hi, bool sqrt_sub, double rel_tol);

/// Radius-anchored table (s_j, rho_j) of a mass-m graph from its horizon,
/// built entirely by quadrature inversion (never by forward ODE from a
/// horizon where the right side is non-Lipschitz).
struct GraphTable {
  std::vector<double> s;
  std::vector<double> rho;
  double m = 0.0;
};

GraphTable build_graph_table(const RadialField& x, double m, double r_hi,
                             int n = 4001);

/// Arclength curve of the tabulated graph; fp and fpp come from the exact
/// relations fp = sqrt(V(f)), fpp = V'(f)/2.
Curve make_graph_curve(std::shared_ptr<const GraphTable> table,
                       std::shared_ptr<const RadialField> x);

/// Arclength curve of a solved ODE: f(s) = u(k (s - s_offset) + tau0), for
/// the collar view f(sigma) = u(k sigma).
Curve make_solution_curve(std::shared_ptr<const RadialSolution> sol,
                          std::shared_ptr<const RadialField> x, double k,
                          double s_offset = 0.0);

}  // namespace bartnik
