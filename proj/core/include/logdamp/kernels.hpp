#pragma once

#include <cmath>

// Cancellation-free scalar kernels shared by the mode solution and the profile.
// Each switches to a short Taylor series below kSeriesCutoff.

namespace logdamp::kernels {

inline constexpr double kSeriesCutoff = 1e-4;

/// (1 - e^{-x}) / x, with value 1 at x = 0.
inline double one_minus_exp_ratio(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
  }
  return -std::expm1(-x) / x;
}

/// sin(x) / x
inline double sinc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

/// sinh(x) / x
inline double sinhc(double x) {
  if (std::abs(x) < kSeriesCutoff) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0;
  }
  return std::sinh(x) / x;
}

// Entire function S(z) = sum z^k / (2k+1)!: equals sinh(sqrt z)/sqrt z for z > 0
// and sin(sqrt -z)/sqrt -z for z < 0. Used across the double-root band where
// z = discriminant * t^2 / 4 is small. Valid to double precision for |z| <= 1e-3.
inline double double_root_series(double z) {
  return 1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0 + z * z * z * z / 362880.0;
}

/// dS/dz for double_root_series.
inline double double_root_series_derivative(double z) {
  return 1.0 / 6.0 + z / 60.0 + z * z / 1680.0 + z * z * z / 90720.0;
}

}  // namespace logdamp::kernels
