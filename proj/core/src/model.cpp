#include "logdamp/model.hpp"

#include <cmath>
#include <sstream>

#include "logdamp/errors.hpp"
#include "logdamp/roots.hpp"

namespace logdamp {

ModelParams::ModelParams(int n, double theta) : n_(n), theta_(theta) {
  if (n < 1) {
    std::ostringstream msg;
    msg << "dimension n must be >= 1, got " << n;
    throw DomainError(msg.str());
  }
  if (!(theta > 0.0 && theta < 0.5)) {
    std::ostringstream msg;
    msg << "theta must lie in (0, 1/2), got " << theta;
    throw DomainError(msg.str());
  }
}

double damping_symbol(double r, const ModelParams& p) {
  if (r <= 0.0) return 0.0;
  return std::log1p(std::pow(r, 2.0 * p.theta()));
}

double discriminant(double r, const ModelParams& p) {
  const double L = damping_symbol(r, p);
  return (L - 2.0 * r) * (L + 2.0 * r);
}

const char* to_string(Zone z) noexcept {
  switch (z) {
    case Zone::Low: return "low";
    case Zone::Degenerate: return "degenerate";
    case Zone::High: return "high";
  }
  return "?";
}

CharRoots char_roots(double r, const ModelParams& p) {
  if (!(r > 0.0)) throw DomainError("char_roots requires r > 0");
  const double L = damping_symbol(r, p);
  const double disc = (L - 2.0 * r) * (L + 2.0 * r);

  CharRoots roots;
  roots.a = 0.5 * L;
  roots.discriminant = disc;
  const double band = kDegenerateTol * (L * L + 4.0 * r * r);
  if (disc >= band) {
    const double s = std::sqrt(disc);
    roots.zone = Zone::Low;
    roots.gap = s;
    roots.lambda_plus = -2.0 * r * r / (L + s);
    roots.lambda_minus = -0.5 * (L + s);
  } else if (disc <= -band) {
    roots.zone = Zone::High;
    roots.gap = 0.5 * std::sqrt(-disc);
    roots.lambda_plus = -roots.a;
    roots.lambda_minus = -roots.a;
  } else {
    roots.zone = Zone::Degenerate;
    roots.gap = 0.0;
    roots.lambda_plus = -roots.a;
    roots.lambda_minus = -roots.a;
  }
  return roots;
}

bool Thresholds::chain_holds() const noexcept {
  return beta > 0.0 && beta <= eta_cubed && eta_cubed < eta && eta < delta && delta < 1.0;
}

double delta_function(double r, const ModelParams& p) {
  return damping_symbol(r, p) - 2.0 * r;
}

namespace {

double symbol_derivative(double r, const ModelParams& p) {
  const double th = p.theta();
  const double rp = std::pow(r, 2.0 * th);
  return 2.0 * th * rp / (r * (1.0 + rp));
}

// Positive root of c * log(1 + r^{2 theta}) - 2 r, c > 0. The function is
// concave with f(0) = 0, positive near 0 and negative at r = 1.
RootResult concave_root(double c, const ModelParams& p) {
  auto f = [&](double r) { return c * damping_symbol(r, p) - 2.0 * r; };
  auto df = [&](double r) { return c * symbol_derivative(r, p) - 2.0; };
  const double hi = 1.0;
  const double lo = bracket_downward(f, hi);
  // Halving keeps the bracket within a factor two of the root.
  return bisect_newton(f, df, lo, 2.0 * lo > hi ? hi : 2.0 * lo, 1e-14);
}

}  // namespace

Thresholds compute_thresholds(const ModelParams& p) {
  Thresholds th;
  const RootResult d = concave_root(1.0, p);
  th.delta = d.root;
  th.delta_residual = std::abs(d.residual);

  th.eta = std::pow(25.0, -1.0 / (2.0 - 4.0 * p.theta()));
  th.eta_cubed = th.eta * th.eta * th.eta;

  // (2/25^3) L^2 = 4 r^2  <=>  sqrt(2/25^3) L = 2 r
  const RootResult b = concave_root(std::sqrt(2.0 / (25.0 * 25.0 * 25.0)), p);
  th.beta = b.root;
  th.beta_residual = std::abs(b.residual);
  return th;
}

double g_function(double s, const ModelParams& p, const Thresholds& th) {
  if (!(s >= 0.0 && s <= th.delta)) {
    std::ostringstream msg;
    msg << "g(s) is defined on [0, delta = " << th.delta << "], got s = " << s;
    throw DomainError(msg.str());
  }
  if (s == 0.0) return 2.0;
  const double s3 = s * s * s;
  const double L = std::log1p(std::pow(s, 6.0 * p.theta()));
  if (L == 0.0) return 2.0;  // s^{6 theta} underflowed; the ratio below tends to 0
  const double ratio = 2.0 * s3 / L;
  const double radicand = 1.0 - ratio * ratio;
  return 1.0 + std::sqrt(radicand < 0.0 ? 0.0 : radicand);
}

double r_function(double r, const ModelParams& p, const Thresholds& th) {
  if (!(r > 0.0 && r <= th.eta_cubed)) {
    std::ostringstream msg;
    msg << "R(r) is defined on (0, eta^3 = " << th.eta_cubed << "], got r = " << r;
    throw DomainError(msg.str());
  }
  const double L = damping_symbol(r, p);
  const double ratio = 2.0 * r / L;
  const double root = std::sqrt(1.0 - ratio * ratio);
  return 4.0 * r * r / (L * L * L * root * (1.0 + root));
}

}  // namespace logdamp
