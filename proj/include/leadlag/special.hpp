#pragma once

#include <cmath>
#include <string>

#include "leadlag/error.hpp"

namespace leadlag {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Digamma via upward recurrence to x >= 10 followed by the asymptotic
// series; relative error stays near 1e-15 for x >= 1.
inline double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DataError("digamma requires a finite positive argument, got " + std::to_string(x));
  }
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  const double tail =
      f * (1.0 / 12 -
           f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f * (1.0 / 132 - f * (691.0 / 32760 - f / 12))))));
  return result + std::log(x) - 0.5 / x - tail;
}

}  // namespace leadlag
