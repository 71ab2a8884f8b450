#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "logdamp/fit.hpp"
#include "logdamp/spectral.hpp"

namespace logdamp {

enum class NormKind { Solution, Profile, ProfileError, Phi1, Phi2, Energy };

const char* to_string(NormKind k) noexcept;

/// Squared L2 norms (or energies) on a time grid, in the unnormalized Fourier
/// convention: no (2 pi)^n factors are applied.
struct NormSeries {
  NormKind kind = NormKind::Solution;
  std::vector<double> times;
  std::vector<double> values;
};

struct NormOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  /// Restrict the radial integral to [band_lower, band_upper].
  double band_lower = 0.0;
  double band_upper = std::numeric_limits<double>::infinity();
};

/// Surface area of the unit sphere in R^n; omega_1 = 2.
double unit_sphere_area(int n);

/// Geometric grid from t_min to t_max with the given number of points per
/// decade; both ends included.
std::vector<double> time_grid(double t_min, double t_max, int points_per_decade);

/// omega_n int |field(t, r)|^2 r^{n-1} dr for Solution, Profile, ProfileError,
/// Phi1 and Phi2; energy(state, t) for Energy.
///
/// Throws Divergent when the integral is infinite: Phi1 and Phi2 need
/// n > 4 theta at r -> 0, and every kind containing phi2 needs 4 theta t > n
/// for the r -> infinity tail.
double l2_norm_sq(const SpectralState& state, NormKind which, double t,
                  const NormOptions& opts = {});

NormSeries norm_series(const SpectralState& state, NormKind which,
                       const std::vector<double>& times, const NormOptions& opts = {});

/// 0.5 omega_n int (|u_hat_t|^2 + r^2 |u_hat|^2) r^{n-1} dr.
double energy(const SpectralState& state, double t, const NormOptions& opts = {});

/// omega_n int log(1 + r^{2 theta}) |u_hat_t|^2 r^{n-1} dr, the rate of energy loss.
double dissipation(const SpectralState& state, double t, const NormOptions& opts = {});

struct EnergyBalance {
  double t = 0.0;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  /// int_0^t dissipation(s) ds
  double dissipated = 0.0;
  /// |energy_final + dissipated - energy_initial| / energy_initial
  double relative_residual = 0.0;
};

EnergyBalance energy_balance(const SpectralState& state, double t, const NormOptions& opts = {});

/// u(t, x) = (1 / pi) int_0^inf u_hat(t, r) cos(x r) dr for n = 1.
std::vector<double> reconstruct_1d(const SpectralState& state, double t,
                                   const std::vector<double>& xs, double rel_tol = 1e-10);

/// Decay exponent rho of the bound ||u - F^{-1} phi|| <= C t^{-rho}. Valid for
/// n = 1 with 0 < theta <= 1/3 and n >= 2 with 0 < theta <= 5/12; RangeError
/// otherwise.
double predicted_remainder_exponent(int n, double theta);

struct TimeWindow {
  double t_min = 1e2;
  double t_max = 1e6;
  int points_per_decade = 4;
};

struct ProfileErrorReport {
  int n = 0;
  double theta = 0.0;
  double rho = 0.0;
  /// Set unless every error value was below the absolute tolerance.
  std::optional<DecayFit> error_fit;
  std::optional<DecayFit> profile_fit;
  bool exact_match = false;
  /// Fitted error exponent <= -rho + slack (or exact match).
  bool within_bound = false;
  /// Error exponent strictly below the profile exponent (or exact match).
  bool profile_leads = false;

  bool passed() const noexcept { return within_bound && profile_leads; }
};

/// Judges precomputed series; `abs_tol` decides ExactMatch.
ProfileErrorReport assess_profile_error(int n, double theta, const NormSeries& error,
                                        const NormSeries& profile, double abs_tol = 1e-300,
                                        double slack = 0.05);

/// Computes the ProfileError and Profile series on the window and assesses them.
ProfileErrorReport profile_error_rate_check(const ModelParams& p, const InitialDatum& datum,
                                            const TimeWindow& window = {},
                                            const NormOptions& opts = {});

}  // namespace logdamp
