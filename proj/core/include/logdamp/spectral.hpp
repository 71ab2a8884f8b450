#pragma once

#include <array>
#include <cmath>

#include "logdamp/model.hpp"

// Exact mode-wise solution of
//   u_hat_tt + log(1 + r^{2 theta}) u_hat_t + r^2 u_hat = 0,
//   u_hat(0) = 0, u_hat_t(0) = u1_hat(r),
// under the unnormalized transform f_hat(xi) = int e^{-i x.xi} f(x) dx.

namespace logdamp {

enum class DatumFamily { Gaussian, ScaledGaussian };

const char* to_string(DatumFamily f) noexcept;

/// Radial initial velocity u1(x) = c exp(-|x|^2 / (2 w^2)) on R^n, with
/// closed-form transform u1_hat(r) = P1 exp(-w^2 r^2 / 2), P1 = c (2 pi)^{n/2} w^n.
class InitialDatum {
 public:
  static InitialDatum gaussian(int n, double width);
  static InitialDatum scaled_gaussian(int n, double width, double amplitude);

  DatumFamily family() const noexcept { return family_; }
  int dimension() const noexcept { return n_; }
  double width() const noexcept { return width_; }
  double amplitude() const noexcept { return amplitude_; }

  /// u1_hat(r); u1_hat(0) = p1().
  double transform(double r) const;
  /// u1_hat(r) - P1 without cancellation.
  double transform_minus_mass(double r) const;
  /// u1 at spatial radius |x|.
  double value(double radius) const;

  /// P1 = int u1 dx
  double p1() const noexcept { return p1_; }
  /// int |u1| dx
  double l1_norm() const noexcept { return std::abs(p1_); }
  /// int (1 + |x|^gamma) |u1| dx, gamma > 0.
  double weighted_norm(double gamma) const;

 private:
  InitialDatum(DatumFamily family, int n, double width, double amplitude);

  DatumFamily family_;
  int n_;
  double width_;
  double amplitude_;
  double p1_;
};

/// f_hat = A - i B + P for the datum. Radial real data give B = 0.
struct MomentDecomposition {
  double a1 = 0.0;
  double b1 = 0.0;
  double p1 = 0.0;
};

MomentDecomposition moment_decomposition(const InitialDatum& datum, double r);

/// phi = phi1 - phi2 with phi1 = P1 e^{-r^2 t / L} / L and phi2 = P1 e^{-L t} / L.
/// `phi` comes from the factored form P1 e^{-min t} (1 - e^{-|gap| t}) / L and
/// agrees with phi1 - phi2 up to rounding; it stays finite as r -> 0.
struct ProfileValue {
  double phi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Value and time derivative of the unit-velocity propagator
/// (e^{t lambda_+} - e^{t lambda_-}) / (lambda_+ - lambda_-).
struct Propagator {
  double value = 0.0;
  double derivative = 0.0;
};

Propagator propagator(const CharRoots& roots, double t);

class SpectralState {
 public:
  /// Throws DomainError if the datum dimension differs from params.n().
  SpectralState(ModelParams params, InitialDatum datum);

  const ModelParams& params() const noexcept { return params_; }
  const Thresholds& thresholds() const noexcept { return thresholds_; }
  const InitialDatum& datum() const noexcept { return datum_; }

  double u_hat(double t, double r) const;
  double u_hat_dt(double t, double r) const;
  ProfileValue profile(double t, double r) const;

  /// u_hat - phi. On 0 < r <= eta^3 it is assembled from F1..F5 and the closed
  /// form F6 = -e^{-L t} expm1(-lambda_+ t) u1_hat / gap, which avoids the
  /// cancellation of the direct difference at large t.
  double profile_error(double t, double r) const;

  /// F1..F6 on the low zone 0 < r <= eta^3; F6 closes u_hat - phi = sum F_j.
  /// Throws DomainError outside that zone.
  std::array<double, 6> remainder_terms(double t, double r) const;

  /// ||u1||_{L^{1, 2 theta}}
  double weighted_norm() const { return datum_.weighted_norm(2.0 * params_.theta()); }

 private:
  ModelParams params_;
  Thresholds thresholds_;
  InitialDatum datum_;
};

}  // namespace logdamp
