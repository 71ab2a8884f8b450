#include "logdamp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/statistics/linear_regression.hpp>

#include "logdamp/errors.hpp"

namespace logdamp {

const char* to_string(FitLaw law) noexcept {
  switch (law) {
    case FitLaw::PowerLaw: return "power_law";
    case FitLaw::SqrtLog: return "sqrt_log";
    case FitLaw::LogPower: return "log_power";
  }
  return "unknown";
}

namespace {

void check_series(const std::vector<double>& times, const std::vector<double>& values,
                  std::size_t min_points, double min_time) {
  if (times.size() != values.size()) {
    throw DomainError("fit: times and values differ in length");
  }
  if (times.size() < min_points) {
    std::ostringstream msg;
    msg << "fit needs at least " << min_points << " points, got " << times.size();
    throw DegenerateFit(msg.str());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > min_time) || !std::isfinite(times[i])) {
      std::ostringstream msg;
      msg << "fit: time " << times[i] << " must be finite and > " << min_time;
      throw DomainError(msg.str());
    }
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("fit: times must increase");
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "fit: value " << values[i] << " at t = " << times[i] << " must be finite and > 0";
      throw DomainError(msg.str());
    }
  }
}

// Fits y = c0 + c1 x and fills the coefficients plus the residual of the
// reconstructed series v_fit = to_value(c0 + c1 x).
template <class ToValue>
DecayFit regress(FitLaw law, const std::vector<double>& times, const std::vector<double>& values,
                 const std::vector<double>& x, const std::vector<double>& y, ToValue to_value) {
  DecayFit fit;
  fit.law = law;
  try {
    const auto [c0, c1] = boost::math::statistics::simple_ordinary_least_squares(x, y);
    fit.intercept = c0;
    fit.exponent = c1;
  } catch (const std::domain_error& e) {
    throw DegenerateFit(e.what());
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double predicted = to_value(fit.intercept + fit.exponent * x[i]);
    fit.max_rel_residual =
        std::max(fit.max_rel_residual, std::abs(values[i] - predicted) / std::abs(predicted));
  }
  fit.t_min = times.front();
  fit.t_max = times.back();
  fit.points = times.size();
  return fit;
}

}  // namespace

DecayFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values) {
  check_series(times, values, 8, 0.0);
  if (times.back() / times.front() < 100.0 * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "power-law fit needs two decades, window is [" << times.front() << ", "
        << times.back() << "]";
    throw DegenerateFit(msg.str());
  }
  std::vector<double> x(times.size());
  std::vector<double> y(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    x[i] = std::log(times[i]);
    y[i] = 0.5 * std::log(values[i]);
  }
  return regress(FitLaw::PowerLaw, times, values, x, y,
                 [](double half_log) { return std::exp(2.0 * half_log); });
}

DecayFit fit_sqrt_log(const std::vector<double>& times, const std::vector<double>& values) {
  check_series(times, values, 3, 1.0);
  std::vector<double> x(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) x[i] = std::log(times[i]);
  DecayFit fit = regress(FitLaw::SqrtLog, times, values, x, values, [](double v) { return v; });
  fit.ratio_first = values.front() / x.front();
  fit.ratio_last = values.back() / x.back();
  fit.ratio_drift = std::abs(fit.ratio_last / fit.ratio_first - 1.0);
  return fit;
}

DecayFit fit_log_power(const std::vector<double>& times, const std::vector<double>& values) {
  check_series(times, values, 3, 1.0);
  std::vector<double> x(times.size());
  std::vector<double> y(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    x[i] = std::log(std::log(times[i]));
    y[i] = 0.5 * std::log(values[i]);
  }
  return regress(FitLaw::LogPower, times, values, x, y,
                 [](double half_log) { return std::exp(2.0 * half_log); });
}

}  // namespace logdamp
