#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace fps {

using cdouble = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// sin(u)/u, with the removable singularity handled by its series.
inline double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

/// Heaviside step with Theta(0) = 1/2.
inline double heaviside(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

/// Wraps an angle to (-pi, pi].
inline double wrap_phase(double phi) {
  double w = std::remainder(phi, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

}  // namespace fps
