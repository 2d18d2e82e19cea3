#include "bartnik/quadrature.hpp"

#include <cmath>
#include <vector>

#include "bartnik/error.hpp"

namespace bartnik {

namespace {

// QUADPACK 7-15 Gauss-Kronrod abscissae and weights on [0, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

}  // namespace

double gk15_panel(const std::function<double(double)>& f, double a, double b,
                  double* err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f_mid = f(mid);
  double k15 = kWgk[7] * f_mid;
  double g7 = kWg[3] * f_mid;

  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double pair = f(mid + dx) + f(mid - dx);
    k15 += kWgk[i] * pair;
    if (i % 2 == 1) g7 += kWg[i / 2] * pair;
  }
  k15 *= half;
  g7 *= half;

  const double diff = std::fabs(k15 - g7);
  *err = diff > 0.0 ? 200.0 * diff * std::sqrt(200.0 * diff) : 0.0;
  return k15;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  struct Interval {
    double a, b;
  };
  std::vector<Interval> stack{{a, b}};
  stack.reserve(64);
  double sum = 0.0;
  std::size_t evaluations = 0;
  const std::size_t max_panels = 200000;
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    double err = 0.0;
    const double s = gk15_panel(f, iv.a, iv.b, &err);
    if (err <= rel_tol * std::fabs(s) + abs_tol ||
        std::fabs(iv.b - iv.a) < 1e-15 * std::fabs(b - a)) {
      sum += s;
      continue;
    }
    if (++evaluations > max_panels) {
      throw Error(ErrorKind::StepFailure,
                  "adaptive quadrature: panel budget exhausted", iv.a);
    }
    const double mid = 0.5 * (iv.a + iv.b);
    stack.push_back({iv.a, mid});
    stack.push_back({mid, iv.b});
  }
  return sum;
}

const GaussLegendre64& gauss_legendre_64() {
  static const GaussLegendre64 rule = [] {
    GaussLegendre64 r{};
    const int n = 64;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      // Newton iteration from the Chebyshev estimate.
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / pp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      r.nodes[i] = -x;
      r.nodes[n - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * pp * pp);
      r.weights[i] = w;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorKind::ZeroProfileAtBoundary: return "ZeroProfileAtBoundary";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DomainExit: return "DomainExit";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::DECViolation: return "DECViolation";
    case ErrorKind::TrappedLeaf: return "TrappedLeaf";
    case ErrorKind::TrappedSurfaceFound: return "TrappedSurfaceFound";
    case ErrorKind::MassOutOfRange: return "MassOutOfRange";
    case ErrorKind::ShapeInfeasible: return "ShapeInfeasible";
    case ErrorKind::EpsilonExhausted: return "EpsilonExhausted";
    case ErrorKind::DeltaExhausted: return "DeltaExhausted";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateC: return "DegenerateC";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

int error_kind_exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidInput:
      return 2;
    case ErrorKind::Infeasible:
    case ErrorKind::HypothesisFailed:
    case ErrorKind::NonPositiveCurvature:
    case ErrorKind::ZeroProfileAtBoundary:
    case ErrorKind::DECViolation:
    case ErrorKind::TrappedLeaf:
    case ErrorKind::TrappedSurfaceFound:
    case ErrorKind::MassOutOfRange:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::DegenerateC:
      return 1;
    default:
      return 3;
  }
}

}  // namespace bartnik
