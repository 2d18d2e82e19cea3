#include "bartnik/path.hpp"

#include <algorithm>
#include <cmath>

#include "bartnik/error.hpp"

namespace bartnik {

namespace {

// 4th-order first derivative on a uniform grid, one-sided at the ends.
double deriv4_at(const std::vector<double>& y, std::size_t i, double h) {
  const std::size_t n = y.size();
  if (n < 6) throw Error(ErrorKind::InvalidInput, "grid too small for stencil");
  auto v = [&](std::size_t k) { return y[k]; };
  if (i >= 2 && i + 2 < n) {
    return (-v(i + 2) + 8.0 * v(i + 1) - 8.0 * v(i - 1) + v(i - 2)) /
           (12.0 * h);
  }
  if (i < 2) {
    const std::size_t o = i;
    // forward-biased 5-point stencils at offsets 0 and 1
    if (o == 0) {
      return (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) -
              3.0 * v(4)) /
             (12.0 * h);
    }
    return (-3.0 * v(0) - 10.0 * v(1) + 18.0 * v(2) - 6.0 * v(3) + v(4)) /
           (12.0 * h);
  }
  const std::size_t o = n - 1 - i;
  if (o == 0) {
    return (25.0 * v(n - 1) - 48.0 * v(n - 2) + 36.0 * v(n - 3) -
            16.0 * v(n - 4) + 3.0 * v(n - 5)) /
           (12.0 * h);
  }
  return (3.0 * v(n - 1) + 10.0 * v(n - 2) - 18.0 * v(n - 3) +
          6.0 * v(n - 4) - v(n - 5)) /
         (12.0 * h);
}

// 4th-order second derivative on a uniform grid, one-sided at the ends.
double deriv2_at(const std::vector<double>& y, std::size_t i, double h) {
  const std::size_t n = y.size();
  if (n < 6) throw Error(ErrorKind::InvalidInput, "grid too small for stencil");
  const double h2 = 12.0 * h * h;
  auto v = [&](std::size_t k) { return y[k]; };
  if (i >= 2 && i + 2 < n) {
    return (-v(i + 2) + 16.0 * v(i + 1) - 30.0 * v(i) + 16.0 * v(i - 1) -
            v(i - 2)) /
           h2;
  }
  if (i < 2) {
    if (i == 0) {
      return (45.0 * v(0) - 154.0 * v(1) + 214.0 * v(2) - 156.0 * v(3) +
              61.0 * v(4) - 10.0 * v(5)) /
             h2;
    }
    return (10.0 * v(0) - 15.0 * v(1) - 4.0 * v(2) + 14.0 * v(3) -
            6.0 * v(4) + v(5)) /
           h2;
  }
  if (i == n - 1) {
    return (45.0 * v(n - 1) - 154.0 * v(n - 2) + 214.0 * v(n - 3) -
            156.0 * v(n - 4) + 61.0 * v(n - 5) - 10.0 * v(n - 6)) /
           h2;
  }
  return (10.0 * v(n - 1) - 15.0 * v(n - 2) - 4.0 * v(n - 3) +
          14.0 * v(n - 4) - 6.0 * v(n - 5) + v(n - 6)) /
         h2;
}

void check_uniform(const std::vector<double>& axis, const char* name) {
  if (axis.size() < 6) {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " axis needs at least 6 nodes");
  }
  const double h = axis[1] - axis[0];
  if (!(h > 0.0)) {
    throw Error(ErrorKind::InvalidInput,
                std::string(name) + " axis must be strictly increasing");
  }
  for (std::size_t i = 1; i + 1 < axis.size(); ++i) {
    if (std::fabs((axis[i + 1] - axis[i]) - h) > 1e-9 * h) {
      throw Error(ErrorKind::InvalidInput,
                  std::string(name) + " axis must be uniform");
    }
  }
}

// Curvature of one leaf. The curvature formula
// K = -(2 sqrt(EG))^{-1} d_theta(d_theta G / sqrt(EG)) collapses for the
// conformal pair E = e^{2psi}, G = e^{-2psi} sin^2 to
//   K = e^{-2psi} (1 + psi_tt + 3 psi_t cot(theta) - 2 psi_t^2),
// which stays numerically stable at the poles; there psi_t cot -> psi_tt
// (input data has psi_t = 0 at the poles), giving K = e^{-2psi}(1+4psi_tt).
void curvature_row(const AxisymmetricPath& path, std::size_t row,
                   std::vector<double>& out) {
  const std::size_t nt = path.theta_axis.size();
  const double h = path.theta_axis[1] - path.theta_axis[0];
  std::vector<double> psi(nt);
  for (std::size_t j = 0; j < nt; ++j) psi[j] = path.at(row, j);
  for (std::size_t j = 0; j < nt; ++j) {
    const double ptt = deriv2_at(psi, j, h);
    if (j == 0 || j + 1 == nt) {
      out[j] = std::exp(-2.0 * psi[j]) * (1.0 + 4.0 * ptt);
      continue;
    }
    const double pt = deriv4_at(psi, j, h);
    const double theta = path.theta_axis[j];
    const double cot = std::cos(theta) / std::sin(theta);
    out[j] = std::exp(-2.0 * psi[j]) *
             (1.0 + ptt + 3.0 * pt * cot - 2.0 * pt * pt);
  }
}

std::vector<double> curvature_impl(const AxisymmetricPath& path, Exec mode) {
  const std::size_t ns = path.s_axis.size();
  const std::size_t nt = path.theta_axis.size();
  std::vector<double> k(ns * nt);
  parallel_for(
      ns,
      [&](std::size_t i) {
        std::vector<double> row(nt);
        curvature_row(path, i, row);
        std::copy(row.begin(), row.end(), k.begin() + i * nt);
      },
      mode);
  return k;
}

}  // namespace

PathDescriptor PathDescriptor::make_direct(double alpha, double beta,
                                           double freeze_eps) {
  PathDescriptor p;
  p.direct = RoundnessConstants{alpha, beta};
  p.freeze_eps = freeze_eps;
  return p;
}

PathDescriptor PathDescriptor::make_axisymmetric(AxisymmetricPath path) {
  PathDescriptor p;
  p.freeze_eps = path.freeze_eps;
  p.axisymmetric = std::move(path);
  return p;
}

void validate_axisymmetric(const AxisymmetricPath& path) {
  check_uniform(path.s_axis, "s");
  check_uniform(path.theta_axis, "theta");
  if (path.psi.size() != path.s_axis.size() * path.theta_axis.size()) {
    throw Error(ErrorKind::InvalidInput, "psi grid size mismatch");
  }
  if (!(path.freeze_eps > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "freeze_eps must be positive");
  }
  if (std::fabs(path.s_axis.front()) > 1e-12 ||
      std::fabs(path.s_axis.back() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "s axis must span [0, 1]");
  }
  if (std::fabs(path.theta_axis.front()) > 1e-12 ||
      std::fabs(path.theta_axis.back() - M_PI) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "theta axis must span [0, pi]");
  }
  const std::size_t ns = path.s_axis.size();
  const std::size_t nt = path.theta_axis.size();
  const double h_theta = path.theta_axis[1] - path.theta_axis[0];
  for (std::size_t i = 0; i < ns; ++i) {
    if (path.s_axis[i] >= 1.0 - path.freeze_eps - 1e-12) {
      for (std::size_t j = 0; j < nt; ++j) {
        if (std::fabs(path.at(i, j)) > 1e-12) {
          throw Error(ErrorKind::InvalidInput,
                      "psi must vanish on the freeze window [1-eps, 1]",
                      path.s_axis[i]);
        }
      }
    }
    // pole smoothness: d_theta psi = 0 at theta = 0, pi
    std::vector<double> col(nt);
    for (std::size_t j = 0; j < nt; ++j) col[j] = path.at(i, j);
    const double d0 = deriv4_at(col, 0, h_theta);
    const double d1 = deriv4_at(col, nt - 1, h_theta);
    if (std::fabs(d0) > 1e-6 || std::fabs(d1) > 1e-6) {
      throw Error(ErrorKind::InvalidInput,
                  "d_theta psi must vanish at the poles", path.s_axis[i]);
    }
  }
}

std::vector<double> gauss_curvature_grid(const AxisymmetricPath& path,
                                         Exec mode) {
  return curvature_impl(path, mode);
}

std::vector<double> gauss_curvature_grid_serial(const AxisymmetricPath& path) {
  return curvature_impl(path, Exec::Serial);
}

std::vector<double> psi_s_grid(const AxisymmetricPath& path, Exec mode) {
  const std::size_t ns = path.s_axis.size();
  const std::size_t nt = path.theta_axis.size();
  const double h = path.s_axis[1] - path.s_axis[0];
  std::vector<double> d(ns * nt);
  parallel_for(
      nt,
      [&](std::size_t j) {
        std::vector<double> col(ns);
        for (std::size_t i = 0; i < ns; ++i) col[i] = path.at(i, j);
        for (std::size_t i = 0; i < ns; ++i) {
          d[i * nt + j] = deriv4_at(col, i, h);
        }
      },
      mode);
  return d;
}

RoundnessConstants roundness_constants(const PathDescriptor& p, Exec mode) {
  if (p.is_direct()) {
    const RoundnessConstants rc = *p.direct;
    if (!(rc.alpha >= 0.0)) {
      throw Error(ErrorKind::InvalidInput, "alpha must be >= 0", rc.alpha);
    }
    if (!(rc.beta > 0.0 && rc.beta <= 1.0)) {
      throw Error(ErrorKind::InvalidInput, "beta must lie in (0, 1]", rc.beta);
    }
    return rc;
  }
  const AxisymmetricPath& path = *p.axisymmetric;
  validate_axisymmetric(path);
  const std::size_t ns = path.s_axis.size();
  const std::size_t nt = path.theta_axis.size();

  const std::vector<double> dpsi = psi_s_grid(path, mode);
  double alpha = 0.0;
  for (double v : dpsi) alpha = std::max(alpha, 2.0 * v * v);

  const std::vector<double> k = gauss_curvature_grid(path, mode);
  double beta = k[0];
  std::size_t arg = 0;
  for (std::size_t idx = 0; idx < k.size(); ++idx) {
    if (k[idx] < beta) {
      beta = k[idx];
      arg = idx;
    }
  }
  if (!(beta > 0.0)) {
    const double s_bad = path.s_axis[arg / nt];
    throw Error(ErrorKind::NonPositiveCurvature,
                "path leaves the positive-scalar-curvature class", s_bad);
  }
  (void)ns;
  return RoundnessConstants{alpha, std::min(beta, 1.0)};
}

PathLeafTable build_leaf_table(const PathDescriptor& p,
                               const RoundnessConstants& global, Exec mode) {
  PathLeafTable table;
  if (p.is_direct()) {
    table.s_axis = {0.0, 1.0};
    table.alpha_row = {global.alpha, global.alpha};
    table.beta_row = {global.beta, global.beta};
    return table;
  }
  const AxisymmetricPath& path = *p.axisymmetric;
  const std::size_t ns = path.s_axis.size();
  const std::size_t nt = path.theta_axis.size();
  const std::vector<double> dpsi = psi_s_grid(path, mode);
  const std::vector<double> k = gauss_curvature_grid(path, mode);
  table.s_axis = path.s_axis;
  table.alpha_row.resize(ns);
  table.beta_row.resize(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    double a = 0.0, b = k[i * nt];
    for (std::size_t j = 0; j < nt; ++j) {
      a = std::max(a, 2.0 * dpsi[i * nt + j] * dpsi[i * nt + j]);
      b = std::min(b, k[i * nt + j]);
    }
    table.alpha_row[i] = a;
    table.beta_row[i] = std::min(b, 1.0);
  }
  return table;
}

RoundnessConstants sample_leaf(const PathLeafTable& table, double s) {
  const auto& ax = table.s_axis;
  if (s <= ax.front()) {
    return RoundnessConstants{table.alpha_row.front(), table.beta_row.front()};
  }
  if (s >= ax.back()) {
    return RoundnessConstants{table.alpha_row.back(), table.beta_row.back()};
  }
  const auto it = std::upper_bound(ax.begin(), ax.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - ax.begin());
  const std::size_t lo = hi - 1;
  return RoundnessConstants{
      std::max(table.alpha_row[lo], table.alpha_row[hi]),
      std::min(table.beta_row[lo], table.beta_row[hi])};
}

}  // namespace bartnik
