#pragma once

#include <cstddef>
#include <vector>

namespace logdamp {

enum class FitLaw { PowerLaw, SqrtLog, LogPower };

const char* to_string(FitLaw law) noexcept;

/// Least-squares fit of a squared-norm series.
///
/// PowerLaw: 0.5 log v = intercept + exponent log t, i.e. the exponent of the norm.
/// SqrtLog:  v = intercept + exponent log t; ratio_first/ratio_last hold v / log t
///           at the window ends and ratio_drift = |ratio_last / ratio_first - 1|.
/// LogPower: 0.5 log v = intercept + exponent log log t.
struct DecayFit {
  FitLaw law = FitLaw::PowerLaw;
  double exponent = 0.0;
  double intercept = 0.0;
  /// max |v - v_fit| / v_fit over the window.
  double max_rel_residual = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
  double ratio_first = 0.0;
  double ratio_last = 0.0;
  double ratio_drift = 0.0;
};

/// Throws DegenerateFit with fewer than 8 points or a span below two decades,
/// DomainError on non-positive values or unsorted times.
DecayFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values);

/// Requires at least 3 points, all times > 1 and values > 0.
DecayFit fit_sqrt_log(const std::vector<double>& times, const std::vector<double>& values);

/// Requires at least 3 points, all times > 1 and values > 0.
DecayFit fit_log_power(const std::vector<double>& times, const std::vector<double>& values);

}  // namespace logdamp
