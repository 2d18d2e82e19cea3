#pragma once

#include <functional>

namespace bartnik {

struct CurveSample {
  double f;
  double fp;
  double fpp;
};

/// A radial profile of a spherically symmetric slab as a function of
/// arclength, with two derivatives.
struct Curve {
  std::function<CurveSample(double)> eval;
  double lo = 0.0;
  double hi = 0.0;
  CurveSample operator()(double s) const { return eval(s); }
};

}  // namespace bartnik
