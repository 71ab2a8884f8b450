#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace logdamp {

/// Controls for integrate_radial.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  /// Zone boundaries; strictly increasing and positive. Points outside
  /// (lower, upper) are ignored.
  std::vector<double> split_points;
  /// With lower == 0 the geometric descent does not stop above this radius.
  double descent_floor = 0.0;
  /// When false, lower == 0 is an ordinary endpoint for a regular integrand
  /// and no geometric descent is made.
  bool graded_origin = true;
  /// Bisection depth of the adaptive Gauss-Kronrod rule on one panel.
  unsigned max_depth = 30;
  /// Total bisections allowed in one call; past it pieces are accepted as they
  /// are and the final error check decides.
  std::size_t max_subdivisions = 20000;
  /// Cap on geometric panels toward 0 or toward infinity.
  int max_geometric_panels = 4000;

  /// Throws DomainError on inconsistent settings.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive integral of f over [spec.lower, spec.upper].
///
/// Panels between split points are at most a factor two wide; toward r = 0 the
/// mesh is graded geometrically ([r/2, r] panels) and toward infinity it
/// doubles, each direction stopping once three consecutive panels contribute
/// less than 1e-3 of the tolerance budget. Each panel is integrated by a
/// 21-point adaptive Gauss-Kronrod rule.
///
/// Throws NonFiniteIntegrand if f returns NaN or infinity, ToleranceNotMet if
/// the summed error estimate exceeds rel_tol * int|f| + abs_tol.
IntegralResult integrate_radial(const std::function<double(double)>& f,
                                const QuadratureSpec& spec);

/// I_p(t) = int_0^1 (1 + r^2)^{-t} r^p dr; DomainError unless p > -1 and t > 0.
double i_p(double t, double p, double rel_tol = 1e-11);

/// J_p(t) = int_1^inf (1 + r^2)^{-t} r^p dr; Divergent if t <= (p + 1) / 2,
/// DomainError if t <= 1.
double j_p(double t, double p, double rel_tol = 1e-11);

/// int_0^upper (1 + r^a)^{-t} r^q dr for a > 0, q > -1, 0 < upper <= 1.
double weighted_power_integral(double t, double a, double q, double upper,
                               double rel_tol = 1e-11);

/// Integral over [eta_low, 1] of (1 + r^2)^{-t} r^p together with the
/// exponential bound C (1 + eta_low^2)^{-t}, C fitted so the two agree at t = 1.
struct MiddleBandCheck {
  double value = 0.0;
  double bound = 0.0;
  bool holds() const noexcept { return value <= bound; }
};

MiddleBandCheck middle_band_bound_check(double t, double eta_low, double p);

/// sup over a log-spaced grid on (0, x_max] of sinh(x) / (x e^x).
double sinh_bound_supremum(double x_max = 700.0, int samples = 20000);

}  // namespace logdamp
