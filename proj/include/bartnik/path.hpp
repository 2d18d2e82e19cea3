#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bartnik/parallel.hpp"
#include "bartnik/types.hpp"

namespace bartnik {

/// Traceless axisymmetric conformal-pair path on the unit sphere,
/// gamma(s) = e^{2 psi} dtheta^2 + e^{-2 psi} sin^2(theta) dphi^2,
/// tabulated on a uniform tensor grid s in [0,1], theta in [0,pi]. The path
/// must be frozen round (psi == 0) for s >= 1 - freeze_eps and have
/// d_theta psi = 0 at the poles.
struct AxisymmetricPath {
  std::vector<double> s_axis;      // uniform, [0, 1]
  std::vector<double> theta_axis;  // uniform, [0, pi]
  std::vector<double> psi;         // row-major, size s_axis * theta_axis
  double freeze_eps = 0.1;

  double at(std::size_t i, std::size_t j) const {
    return psi[i * theta_axis.size() + j];
  }
};

/// Metric-path descriptor: either the bare constants (alpha, beta) or an
/// axisymmetric psi grid they are computed from.
struct PathDescriptor {
  std::optional<RoundnessConstants> direct;
  std::optional<AxisymmetricPath> axisymmetric;
  double freeze_eps = 0.1;

  static PathDescriptor make_direct(double alpha, double beta,
                                    double freeze_eps = 0.1);
  static PathDescriptor make_axisymmetric(AxisymmetricPath path);

  bool is_direct() const { return direct.has_value(); }
};

/// Gaussian curvature grid of an axisymmetric path, evaluated with
/// fourth-order stencils (one-sided toward the poles); the pole rows copy
/// the innermost interior value.
std::vector<double> gauss_curvature_grid(const AxisymmetricPath& path,
                                         Exec mode = default_exec());
std::vector<double> gauss_curvature_grid_serial(const AxisymmetricPath& path);

/// d_s psi on the full grid (4th-order stencils, one-sided at the ends).
std::vector<double> psi_s_grid(const AxisymmetricPath& path,
                               Exec mode = default_exec());

/// Computes (alpha, beta) for a descriptor. For the axisymmetric family
/// alpha = max 2 (d_s psi)^2 and beta = min Gaussian curvature; throws
/// Error{NonPositiveCurvature} if beta <= 0. Direct descriptors pass
/// through after range validation.
RoundnessConstants roundness_constants(const PathDescriptor& p,
                                       Exec mode = default_exec());

/// Per-leaf roundness rows used by the collar DEC audit: alpha_row[i] is the
/// max over theta of 2 (d_s psi)^2 on leaf i, beta_row[i] the min Gaussian
/// curvature. Direct descriptors get a single constant row (the global
/// constants, a conservative bound on every leaf).
struct PathLeafTable {
  std::vector<double> s_axis;
  std::vector<double> alpha_row;
  std::vector<double> beta_row;
};

PathLeafTable build_leaf_table(const PathDescriptor& p,
                               const RoundnessConstants& global,
                               Exec mode = default_exec());

/// Conservative sample at parameter s: max alpha / min beta over the
/// bracketing rows.
RoundnessConstants sample_leaf(const PathLeafTable& table, double s);

/// Grid validation used on ingestion: freeze window, pole smoothness,
/// uniform monotone axes. Throws Error{InvalidInput}.
void validate_axisymmetric(const AxisymmetricPath& path);

}  // namespace bartnik
