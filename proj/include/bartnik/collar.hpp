#pragma once

#include <memory>
#include <vector>

#include "bartnik/curve.hpp"
#include "bartnik/parallel.hpp"
#include "bartnik/path.hpp"
#include "bartnik/profile.hpp"
#include "bartnik/radial_ode.hpp"
#include "bartnik/types.hpp"

namespace bartnik {

/// Energy density of the block-diagonal model class
/// g = A^2 ds^2 + f^2 gamma(s), K = A^2 x'(f) ds^2 + x(f) f gamma(s):
/// mu = R_s/(2 f^2) - (f'^2 + 2 f f'')/(A^2 f^2) + (x^2 + 2 x x' f)/f^2
///      - |gamma'|^2 / (8 A^2),
/// with f', f'' taken in the s coordinate of the lapse A.
double mu_block_diagonal(double f, double fp, double fpp, double A, double R_s,
                         double gamma_prime_sq, double x, double xp);

/// Max momentum-constraint residual over a profile grid: the radial
/// component div K_s - d_s(tr K), with div K_s from the pointwise formula
/// (using the profile's x'') and d_s(tr K) by 4th-order differences along
/// the grid. Vanishes identically for consistent (x, x', x'') data.
double momentum_residual(const std::vector<double>& s,
                         const std::vector<double>& f,
                         const std::vector<double>& fp, const RadialField& x);

struct CollarConstants {
  double k = 0.0;
  double D = 0.0;
  double m_bar = 0.0;
  double A = 0.0;
  double feasC1 = 0.0;
  double feasC2 = 0.0;
  double x_ro = 0.0;      // x(r_o) after the sign convention is applied
  double sign = 1.0;      // -1 when the profile was negated so that D > 0
};

/// Collar constants for the mass-parameter choice that enforces k^2 = D^2.
/// Throws Error{ZeroProfileAtBoundary} when x(r_o) = 0 and
/// Error{Infeasible} when the feasibility inequalities fail.
CollarConstants collar_constants(const BartnikData& d,
                                 const RoundnessConstants& rc,
                                 const ProfileFunction& x);

struct CollarLeaf {
  double s = 0.0;        // collar parameter in [0, 1]
  double u = 0.0;        // radius u(A k s)
  double H = 0.0;
  double P = 0.0;
  double hcal2 = 0.0;
  double mu = 0.0;
  double m_H = 0.0;
  double dec_margin = 0.0;
};

struct CollarSlab {
  BartnikData data;
  RoundnessConstants rc;
  CollarConstants constants;
  std::vector<CollarLeaf> leaves;
  std::shared_ptr<const ProfileFunction> base;  // sign-fixed x (ODE driver)
  std::shared_ptr<const ScaledProfile> scaled;  // D * x (curvature data)
  std::shared_ptr<const RadialSolution> radius; // u on tau in [0, A k]
  double freeze_eps = 0.1;
  bool simple = false;

  double arclength() const { return constants.A; }
  const CollarLeaf& boundary() const { return leaves.front(); }
  const CollarLeaf& end() const { return leaves.back(); }

  /// Arclength view f(sigma) = u(k sigma) on [0, A] used for gluing.
  Curve arclength_curve() const;
};

struct CollarOptions {
  int grid_points = 2001;
  Exec exec = default_exec();
};

/// General collar with the enforced k^2 = D^2 mass parameter.
CollarSlab build_collar(const BartnikData& d, const PathDescriptor& path,
                        const ProfileFunction& x,
                        const CollarOptions& opts = {});

/// Collar with x = B / sqrt(r), B = P_o r_o^{3/2} / 2, D = 1,
/// m_bar = B^2 / 2, so u(A k s) = r_o + A k s exactly.
CollarSlab build_simple_collar(const BartnikData& d,
                               const PathDescriptor& path,
                               const CollarOptions& opts = {});

/// Leafwise DEC margin 2 beta - 2 k^2 - u^2 alpha / A^2 (the vanishing
/// G_x-coupled term is asserted at build time, not here).
double dec_margin_leaf(double u, double k, double A,
                       const RoundnessConstants& leaf_rc);

/// Serial twin of the parallel leaf-fill kernel, kept as the reference
/// implementation for testing and benchmarks.
void fill_leaves(CollarSlab& slab, const PathLeafTable& table, Exec mode);
void fill_leaves_serial(CollarSlab& slab, const PathLeafTable& table);

}  // namespace bartnik
