#include "logdamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "logdamp/errors.hpp"
#include "logdamp/kernels.hpp"

namespace logdamp {

const char* to_string(DatumFamily f) noexcept {
  switch (f) {
    case DatumFamily::Gaussian: return "gaussian";
    case DatumFamily::ScaledGaussian: return "scaled-gaussian";
  }
  return "?";
}

InitialDatum::InitialDatum(DatumFamily family, int n, double width, double amplitude)
    : family_(family), n_(n), width_(width), amplitude_(amplitude) {
  if (n < 1) throw DomainError("datum dimension must be >= 1");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("datum width must be positive");
  if (!(amplitude != 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("datum amplitude must be finite and nonzero");
  }
  p1_ = amplitude * std::pow(2.0 * std::numbers::pi, 0.5 * n) * std::pow(width, n);
}

InitialDatum InitialDatum::gaussian(int n, double width) {
  return InitialDatum(DatumFamily::Gaussian, n, width, 1.0);
}

InitialDatum InitialDatum::scaled_gaussian(int n, double width, double amplitude) {
  return InitialDatum(DatumFamily::ScaledGaussian, n, width, amplitude);
}

double InitialDatum::transform(double r) const {
  return p1_ * std::exp(-0.5 * width_ * width_ * r * r);
}

double InitialDatum::transform_minus_mass(double r) const {
  return p1_ * std::expm1(-0.5 * width_ * width_ * r * r);
}

double InitialDatum::value(double radius) const {
  return amplitude_ * std::exp(-0.5 * radius * radius / (width_ * width_));
}

double InitialDatum::weighted_norm(double gamma) const {
  if (!(gamma > 0.0)) throw DomainError("weight exponent must be positive");
  // int |x|^gamma e^{-|x|^2/(2w^2)} dx = pi^{n/2} (2 w^2)^{(gamma+n)/2} Gamma((gamma+n)/2) / Gamma(n/2)
  const double half_n = 0.5 * n_;
  const double log_moment = half_n * std::log(std::numbers::pi) +
                            0.5 * (gamma + n_) * std::log(2.0 * width_ * width_) +
                            std::lgamma(0.5 * (gamma + n_)) - std::lgamma(half_n);
  return l1_norm() + std::abs(amplitude_) * std::exp(log_moment);
}

MomentDecomposition moment_decomposition(const InitialDatum& datum, double r) {
  if (r < 0.0) throw DomainError("moment_decomposition requires r >= 0");
  return {datum.transform_minus_mass(r), 0.0, datum.p1()};
}

namespace {

// |z| bound below which the double-root series replaces the branch formulas.
constexpr double kSeriesBand = 1e-3;

Propagator low_zone(double lambda_plus, double gap, double t) {
  const double x = t * gap;
  const double e1 = kernels::one_minus_exp_ratio(x);
  const double growth = std::exp(t * lambda_plus);
  return {t * growth * e1, growth * (lambda_plus * t * e1 + std::exp(-x))};
}

Propagator high_zone(double a, double b, double t) {
  const double decay = std::exp(-a * t);
  const double sc = kernels::sinc(b * t);
  return {t * decay * sc, decay * (std::cos(b * t) - a * t * sc)};
}

}  // namespace

Propagator propagator(const CharRoots& roots, double t) {
  if (t == 0.0) return {0.0, 1.0};
  switch (roots.zone) {
    case Zone::Low:
      return low_zone(roots.lambda_plus, roots.gap, t);
    case Zone::High:
      return high_zone(roots.a, roots.gap, t);
    case Zone::Degenerate:
      break;
  }
  const double disc = roots.discriminant;
  const double z = 0.25 * disc * t * t;
  if (std::abs(z) <= kSeriesBand) {
    const double decay = std::exp(-roots.a * t);
    const double s = kernels::double_root_series(z);
    const double ds = kernels::double_root_series_derivative(z);
    return {t * decay * s, decay * (s * (1.0 - roots.a * t) + 2.0 * z * ds)};
  }
  const double L = 2.0 * roots.a;
  if (disc > 0.0) {
    const double gap = std::sqrt(disc);
    const double r_sq = 0.25 * (L * L - disc);
    return low_zone(-2.0 * r_sq / (L + gap), gap, t);
  }
  return high_zone(roots.a, 0.5 * std::sqrt(-disc), t);
}

SpectralState::SpectralState(ModelParams params, InitialDatum datum)
    : params_(params), thresholds_(compute_thresholds(params)), datum_(datum) {
  if (datum.dimension() != params.n()) {
    std::ostringstream msg;
    msg << "datum dimension " << datum.dimension() << " differs from model dimension "
        << params.n();
    throw DomainError(msg.str());
  }
}

double SpectralState::u_hat(double t, double r) const {
  if (t == 0.0) return 0.0;
  if (r == 0.0) return t * datum_.p1();
  return propagator(char_roots(r, params_), t).value * datum_.transform(r);
}

double SpectralState::u_hat_dt(double t, double r) const {
  if (r == 0.0) return datum_.p1();
  return propagator(char_roots(r, params_), t).derivative * datum_.transform(r);
}

ProfileValue SpectralState::profile(double t, double r) const {
  const double p1 = datum_.p1();
  const double L = damping_symbol(r, params_);
  if (L == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {t * p1, inf, inf};
  }
  const double slow = r * r / L;       // exponent rate of phi1
  const double fast = L;               // exponent rate of phi2
  const double gap = (L - r) * (L + r) / L;  // fast - slow
  ProfileValue v;
  v.phi1 = p1 * std::exp(-slow * t) / L;
  v.phi2 = p1 * std::exp(-fast * t) / L;
  const double rate = std::min(slow, fast);
  v.phi = p1 * std::exp(-rate * t) * t * (gap / L) *
          kernels::one_minus_exp_ratio(std::abs(gap) * t);
  return v;
}

std::array<double, 6> SpectralState::remainder_terms(double t, double r) const {
  if (!(r > 0.0 && r <= thresholds_.eta_cubed)) {
    std::ostringstream msg;
    msg << "remainder terms are defined for 0 < r <= eta^3 = " << thresholds_.eta_cubed
        << ", got r = " << r;
    throw DomainError(msg.str());
  }
  const CharRoots roots = char_roots(r, params_);
  const double L = 2.0 * roots.a;
  const double u1 = datum_.transform(r);
  const double a1 = datum_.transform_minus_mass(r);
  const double R = r_function(r, params_, thresholds_);
  const double slow = std::exp(-r * r / L * t);
  const double fast = std::exp(-L * t);
  const double lp = roots.lambda_plus;

  std::array<double, 6> F{};
  F[0] = R * slow * u1;
  F[1] = -R * fast * u1;
  F[2] = slow * a1 / L;
  F[3] = slow * std::expm1(-lp * lp / L * t) / roots.gap * u1;
  F[4] = -fast * a1 / L;
  const double residual = u_hat(t, r) - profile(t, r).phi;
  F[5] = residual - (F[0] + F[1] + F[2] + F[3] + F[4]);
  return F;
}

double SpectralState::profile_error(double t, double r) const {
  if (!(r > 0.0 && r <= thresholds_.eta_cubed) || t == 0.0) {
    return u_hat(t, r) - profile(t, r).phi;
  }
  const CharRoots roots = char_roots(r, params_);
  const double L = 2.0 * roots.a;
  const double u1 = datum_.transform(r);
  const double a1 = datum_.transform_minus_mass(r);
  const double R = r_function(r, params_, thresholds_);
  const double slow = std::exp(-r * r / L * t);
  const double fast = std::exp(-L * t);
  const double lp = roots.lambda_plus;

  // F1 + F2 and F3 + F5 share the factor e^{-A t} - e^{-L t}; pairing them
  // matters once R(r) grows without bound near 0 (theta > 1/3).
  const double split = -slow * std::expm1(-(L - r * r / L) * t);
  const double f12 = R * u1 * split;
  const double f35 = a1 / L * split;
  const double f4 = slow * std::expm1(-lp * lp / L * t) / roots.gap * u1;
  // e^{-L t} - e^{t lambda_-}, where lambda_- = -L - lambda_+.
  const double fast_gap = -lp * t < 1.0 ? -fast * std::expm1(-lp * t)
                                         : fast - std::exp(roots.lambda_minus * t);
  const double f6 = fast_gap / roots.gap * u1;
  return (f12 + f6) + (f35 + f4);
}

}  // namespace logdamp
