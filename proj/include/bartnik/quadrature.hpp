#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace bartnik {

/// Adaptive Gauss-Kronrod 7-15 integration with interval bisection.
/// Throws Error{StepFailure} if the interval stack is exhausted before the
/// tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          double abs_tol = 1e-14);

/// Single G7K15 panel; returns the K15 value, writes the error estimate.
double gk15_panel(const std::function<double(double)>& f, double a, double b,
                  double* err);

struct GaussLegendre64 {
  std::array<double, 64> nodes;    // on [-1, 1]
  std::array<double, 64> weights;
};

/// Nodes/weights computed once by Newton iteration on the Legendre
/// polynomial; deterministic to the last bit.
const GaussLegendre64& gauss_legendre_64();

/// Fixed 64-node Gauss-Legendre quadrature of f over [a, b].
template <class F>
double gl64(const F& f, double a, double b) {
  const GaussLegendre64& rule = gauss_legendre_64();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace bartnik
