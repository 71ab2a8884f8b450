#include "logdamp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "logdamp/errors.hpp"
#include "logdamp/quadrature.hpp"

namespace logdamp {

const char* to_string(NormKind k) noexcept {
  switch (k) {
    case NormKind::Solution: return "solution";
    case NormKind::Profile: return "profile";
    case NormKind::ProfileError: return "profile_error";
    case NormKind::Phi1: return "phi1";
    case NormKind::Phi2: return "phi2";
    case NormKind::Energy: return "energy";
  }
  return "unknown";
}

double unit_sphere_area(int n) {
  if (n < 1) throw DomainError("unit_sphere_area requires n >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

std::vector<double> time_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || !std::isfinite(t_max)) {
    throw DomainError("time_grid requires 0 < t_min <= t_max < inf");
  }
  if (points_per_decade < 1) throw DomainError("time_grid requires points_per_decade >= 1");
  const double decades = std::log10(t_max / t_min);
  const int steps = std::max(0, static_cast<int>(std::ceil(decades * points_per_decade - 1e-9)));
  std::vector<double> times;
  times.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    times.push_back(k == steps ? t_max : t_min * std::pow(10.0, static_cast<double>(k) / points_per_decade));
  }
  if (steps == 0) times.assign(1, t_min);
  return times;
}

namespace {

// Radius beyond which the Gaussian factor u1_hat^2 is below 1e-40 of its peak.
double gaussian_cutoff(const InitialDatum& datum) {
  return std::sqrt(2.0 * 40.0 * std::log(10.0)) / datum.width();
}

QuadratureSpec radial_spec(const SpectralState& state, double t, const NormOptions& opts) {
  const Thresholds& th = state.thresholds();
  const double theta = state.params().theta();
  std::vector<double> points{th.beta, th.eta_cubed, th.eta, th.delta, 1.0,
                             gaussian_cutoff(state.datum())};
  double smallest = th.beta;
  if (t > 0.0) {
    const double scales[] = {std::pow(t, -1.0 / (2.0 - 2.0 * theta)), std::pow(t, -0.5 / theta),
                             1.0 / t, std::pow(t, -2.0 / 3.0)};
    for (double s : scales) {
      if (s > 0.0 && std::isfinite(s)) {
        points.push_back(s);
        smallest = std::min(smallest, s);
      }
    }
  }
  std::sort(points.begin(), points.end());
  std::vector<double> split;
  for (double s : points) {
    if (s > 0.0 && std::isfinite(s) && (split.empty() || s > split.back() * (1.0 + 1e-12))) {
      split.push_back(s);
    }
  }

  QuadratureSpec spec;
  spec.rel_tol = opts.rel_tol;
  spec.abs_tol = opts.abs_tol;
  spec.lower = opts.band_lower;
  spec.upper = opts.band_upper;
  spec.split_points = std::move(split);
  spec.descent_floor = 1e-2 * smallest;
  return spec;
}

double radial_integral(const SpectralState& state, double t, const NormOptions& opts,
                       const std::function<double(double)>& field_sq) {
  const int n = state.params().n();
  const QuadratureSpec spec = radial_spec(state, t, opts);
  auto integrand = [&](double r) {
    const double w = n == 1 ? 1.0 : std::pow(r, n - 1);
    return w == 0.0 ? 0.0 : field_sq(r) * w;
  };
  return unit_sphere_area(n) * integrate_radial(integrand, spec).value;
}

void check_convergent(const SpectralState& state, NormKind which, double t,
                      const NormOptions& opts) {
  const int n = state.params().n();
  const double theta = state.params().theta();
  const bool near_origin = opts.band_lower == 0.0;
  if ((which == NormKind::Phi1 || which == NormKind::Phi2) && near_origin && n - 4.0 * theta <= 0.0) {
    std::ostringstream msg;
    msg << "||" << to_string(which) << "||^2 diverges at r = 0 for n <= 4 theta (n = " << n
        << ", theta = " << theta << ")";
    throw Divergent(msg.str());
  }
  const bool has_phi2 =
      which == NormKind::Phi2 || which == NormKind::Profile || which == NormKind::ProfileError;
  if (has_phi2 && std::isinf(opts.band_upper) && 4.0 * theta * t <= n) {
    std::ostringstream msg;
    msg << "||" << to_string(which) << "||^2 diverges as r -> infinity for 4 theta t <= n (t = "
        << t << ", theta = " << theta << ", n = " << n << ")";
    throw Divergent(msg.str());
  }
}

}  // namespace

double l2_norm_sq(const SpectralState& state, NormKind which, double t, const NormOptions& opts) {
  if (which == NormKind::Energy) return energy(state, t, opts);
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("l2_norm_sq requires finite t > 0");
  check_convergent(state, which, t, opts);

  auto sq = [](double v) { return v * v; };
  switch (which) {
    case NormKind::Solution:
      return radial_integral(state, t, opts, [&](double r) { return sq(state.u_hat(t, r)); });
    case NormKind::Profile:
      return radial_integral(state, t, opts, [&](double r) { return sq(state.profile(t, r).phi); });
    case NormKind::ProfileError:
      return radial_integral(state, t, opts, [&](double r) { return sq(state.profile_error(t, r)); });
    case NormKind::Phi1:
      return radial_integral(state, t, opts, [&](double r) {
        return r == 0.0 ? 0.0 : sq(state.profile(t, r).phi1);
      });
    case NormKind::Phi2:
      return radial_integral(state, t, opts, [&](double r) {
        return r == 0.0 ? 0.0 : sq(state.profile(t, r).phi2);
      });
    case NormKind::Energy:
      break;
  }
  throw DomainError("unknown norm kind");
}

NormSeries norm_series(const SpectralState& state, NormKind which, const std::vector<double>& times,
                       const NormOptions& opts) {
  NormSeries series;
  series.kind = which;
  series.times = times;
  series.values.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("norm_series: times must increase");
    series.values.push_back(l2_norm_sq(state, which, times[i], opts));
  }
  return series;
}

double energy(const SpectralState& state, double t, const NormOptions& opts) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("energy requires finite t >= 0");
  return 0.5 * radial_integral(state, t, opts, [&](double r) {
    const double v = state.u_hat(t, r);
    const double dv = state.u_hat_dt(t, r);
    return dv * dv + r * r * v * v;
  });
}

double dissipation(const SpectralState& state, double t, const NormOptions& opts) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("dissipation requires finite t >= 0");
  const ModelParams& p = state.params();
  return radial_integral(state, t, opts, [&](double r) {
    const double dv = state.u_hat_dt(t, r);
    return damping_symbol(r, p) * dv * dv;
  });
}

EnergyBalance energy_balance(const SpectralState& state, double t, const NormOptions& opts) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("energy_balance requires finite t > 0");
  EnergyBalance b;
  b.t = t;
  b.energy_initial = energy(state, 0.0, opts);
  b.energy_final = energy(state, t, opts);

  QuadratureSpec spec;
  spec.rel_tol = std::max(100.0 * opts.rel_tol, 1e-9);
  spec.abs_tol = 0.0;
  spec.upper = t;
  for (double s = 1e-2; s < t; s *= 10.0) spec.split_points.push_back(s);
  spec.graded_origin = false;
  b.dissipated =
      integrate_radial([&](double s) { return dissipation(state, s, opts); }, spec).value;
  b.relative_residual =
      std::abs(b.energy_final + b.dissipated - b.energy_initial) / b.energy_initial;
  return b;
}

std::vector<double> reconstruct_1d(const SpectralState& state, double t,
                                   const std::vector<double>& xs, double rel_tol) {
  if (state.params().n() != 1) throw DomainError("reconstruct_1d requires n = 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("reconstruct_1d requires finite t > 0");
  NormOptions opts;
  opts.rel_tol = rel_tol;
  QuadratureSpec spec = radial_spec(state, t, opts);
  spec.abs_tol = 1e-15 * std::abs(state.datum().p1()) * t;
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const double ax = std::abs(x);
    auto f = [&](double r) { return state.u_hat(t, r) * std::cos(ax * r); };
    out.push_back(integrate_radial(f, spec).value / std::numbers::pi);
  }
  return out;
}

double predicted_remainder_exponent(int n, double theta) {
  const bool in_range = n == 1 ? (theta > 0.0 && theta <= 1.0 / 3.0)
                               : (n >= 2 && theta > 0.0 && theta <= 5.0 / 12.0);
  if (!in_range) {
    std::ostringstream msg;
    msg << "profile error bound needs n = 1 with 0 < theta <= 1/3 or n >= 2 with "
           "0 < theta <= 5/12; got n = "
        << n << ", theta = " << theta;
    throw RangeError(msg.str());
  }
  const double slow = n / (4.0 * (1.0 - theta));
  if (theta <= 1.0 / 6.0) return std::min(slow, n / (4.0 * theta));
  if (theta <= 1.0 / 3.0) return std::min(slow, (n - 4.0 * theta + 2.0 / 3.0) / (4.0 * theta));
  return std::min((n - 1) / (4.0 * (1.0 - theta)), (n - 1) / (4.0 * theta));
}

ProfileErrorReport assess_profile_error(int n, double theta, const NormSeries& error,
                                        const NormSeries& profile, double abs_tol, double slack) {
  ProfileErrorReport report;
  report.n = n;
  report.theta = theta;
  report.rho = predicted_remainder_exponent(n, theta);
  report.profile_fit = fit_power_law(profile.times, profile.values);
  report.exact_match = std::all_of(error.values.begin(), error.values.end(),
                                   [&](double v) { return std::abs(v) <= abs_tol; });
  if (report.exact_match) {
    report.within_bound = true;
    report.profile_leads = true;
    return report;
  }
  report.error_fit = fit_power_law(error.times, error.values);
  report.within_bound = report.error_fit->exponent <= -report.rho + slack;
  report.profile_leads = report.error_fit->exponent < report.profile_fit->exponent;
  return report;
}

ProfileErrorReport profile_error_rate_check(const ModelParams& p, const InitialDatum& datum,
                                            const TimeWindow& window, const NormOptions& opts) {
  predicted_remainder_exponent(p.n(), p.theta());
  const SpectralState state(p, datum);
  const auto times = time_grid(window.t_min, window.t_max, window.points_per_decade);
  const NormSeries error = norm_series(state, NormKind::ProfileError, times, opts);
  const NormSeries profile = norm_series(state, NormKind::Profile, times, opts);
  return assess_profile_error(p.n(), p.theta(), error, profile, opts.abs_tol, 0.05);
}

}  // namespace logdamp
