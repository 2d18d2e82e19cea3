#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bartnik/collar.hpp"
#include "bartnik/smoothing.hpp"

namespace bartnik {

enum class PieceKind { Collar, Glue, Bend, Schwarzschild };

const char* piece_kind_name(PieceKind kind);

struct Piece {
  PieceKind kind;
  double lo = 0.0, hi = 0.0;  // composite arclength interval
  Curve curve;
  std::shared_ptr<const RadialField> field;  // profile the piece carries
};

struct JointDefect {
  double s = 0.0;
  double df = 0.0;
  double dfp = 0.0;
};

struct ExtensionAudits {
  double dec_min_margin = 0.0;      // over collar leaves
  double min_hcal2 = 0.0;           // over every piece, s > 0
  double min_f_minus_2mh = 0.0;     // along the collar
  double max_joint_df = 0.0;
  double max_joint_dfp = 0.0;
  std::vector<JointDefect> joints;
  double exterior_isometry = 0.0;   // max |FD4(f)^2 - V| on the pure graph
  double exterior_mass_drift = 0.0; // max |m_H(s) - m| on the pure graph
  double trapped_d_margin = 0.0;    // glue-window d-scheme slack
  int trapped_retries = 0;
};

struct TaperRecord {
  double r_switch = 0.0;
  bool identity = false;
  double mu_min = 0.0;
  double hcal2_min = 0.0;
};

struct BendRecord {
  double s_o = 0.0;
  double delta = 0.0;
  double kappa = 0.0;
  double min_correction = 0.0;
  double slope_gap = 0.0;  // f'(b) - u_m'(s_o), measured positive
};

struct CompositeRow {
  PieceKind piece;
  double s = 0.0, f = 0.0, fp = 0.0, mu = 0.0, m_h = 0.0, hcal2 = 0.0;
};

struct ExtensionReport {
  CollarSlab collar;
  double exterior_mass = 0.0;
  double s_hat = 0.0;
  std::vector<Piece> pieces;
  GlueCertificate glue_cert;
  BendRecord bend_rec;
  ExtensionAudits audits;
  std::optional<TaperRecord> taper;
  std::optional<double> cmc_value;
  std::vector<CompositeRow> grid;
};

struct AssembleOptions {
  double eta = 0.01;                  // exterior mass fraction of the window
  int grid_points = 2001;             // collar leaves
  int composite_points = 4001;        // output rows
  double exterior_radius_factor = 4.0;
  double eps_offset_steps = 10.0;     // grid steps past s-hat
  double zeta_width = 0.25;
  int max_trapped_retries = 8;
  Exec exec = default_exec();
};

/// Pieces produced by bending the mass-m graph at s_o and gluing it to the
/// round tail of the collar. The collar slab must already satisfy the
/// strict DEC; m must lie in (m_H(end), f(end)/2).
ExtensionReport glue_to_schwarzschild(CollarSlab collar, double m,
                                      const AssembleOptions& opts = {});

/// Full pipeline: collar, exterior-mass choice, glue, trapped audit.
ExtensionReport assemble_extension(const BartnikData& d,
                                   const PathDescriptor& path,
                                   const ProfileFunction& x,
                                   const AssembleOptions& opts = {});

/// Same pipeline on the x = B/sqrt(r) collar.
ExtensionReport assemble_simple_extension(const BartnikData& d,
                                          const PathDescriptor& path,
                                          const AssembleOptions& opts = {});

/// Constant-mean-curvature extension with x = K2 r - K1 / r^2. Reports the
/// mean curvature value 3 r_o^3 |P_o| K2 / (2 |K2 r_o^3 - K1|).
ExtensionReport assemble_cmc(const BartnikData& d, const PathDescriptor& path,
                             double K2, double K1,
                             const AssembleOptions& opts = {});

/// Leafwise trapped-surface scan across the assembled pieces; throws
/// Error{TrappedSurfaceFound} if positivity of the spacetime mean curvature
/// fails for s > 0. Returns the minimum over the scan.
double trapped_audit(const ExtensionReport& report, int points_per_piece = 2001);

/// Replaces the exterior profile by chi x + (1 - chi) target over
/// [r_switch, 2 r_switch] and re-solves the graph outward; re-audits the
/// energy density and the trapped-surface scan on the tapered region.
void taper_profile(ExtensionReport& report, double r_switch,
                   const ProfileFunction& target,
                   const AssembleOptions& opts = {});

/// Spacetime mean curvature of an arclength leaf,
/// (4/f^2)(f'^2 - x(f)^2).
double leaf_hcal2(const CurveSample& c, const RadialField& x);

/// Hawking mass of an arclength leaf, (f/2)(1 + x(f)^2 - f'^2).
double leaf_hawking(const CurveSample& c, const RadialField& x);

}  // namespace bartnik
