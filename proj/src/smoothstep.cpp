#include "bartnik/smoothstep.hpp"

#include <cmath>

#include "bartnik/quadrature.hpp"

namespace bartnik {

namespace {

// a(t) = exp(-1/t) for t > 0, with a(0+) = 0 to all orders.
inline double bump_a(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
inline double bump_a1(double t) {
  return t > 0.0 ? bump_a(t) / (t * t) : 0.0;
}
inline double bump_a2(double t) {
  if (t <= 0.0) return 0.0;
  const double a = bump_a(t);
  const double t2 = t * t;
  return a * (1.0 / (t2 * t2) - 2.0 / (t2 * t));
}

}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double u = bump_a(t);
  const double v = bump_a(1.0 - t);
  return u / (u + v);
}

double smoothstep_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = bump_a(t), v = bump_a(1.0 - t);
  const double up = bump_a1(t), vp = -bump_a1(1.0 - t);
  const double den = u + v;
  return (up * v - u * vp) / (den * den);
}

double smoothstep_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double u = bump_a(t), v = bump_a(1.0 - t);
  const double up = bump_a1(t), vp = -bump_a1(1.0 - t);
  const double upp = bump_a2(t), vpp = bump_a2(1.0 - t);
  const double den = u + v;
  const double num1 = (upp * v - u * vpp) * den;
  const double num2 = 2.0 * (up * v - u * vp) * (up + vp);
  return (num1 - num2) / (den * den * den);
}

double quintic_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double quintic_step_d1(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double w = t * (1.0 - t);
  return 30.0 * w * w;
}

double quintic_step_d2(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
}

double mollifier_mass_raw() {
  static const double mass = [] {
    auto raw = [](double t) {
      const double w = 1.0 - t * t;
      return w > 0.0 ? std::exp(-1.0 / w) : 0.0;
    };
    return integrate_adaptive(raw, -1.0, 1.0, 1e-14, 1e-16);
  }();
  return mass;
}

double mollifier(double t) {
  const double w = 1.0 - t * t;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w) / mollifier_mass_raw();
}

}  // namespace bartnik
