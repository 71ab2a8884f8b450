#pragma once

// Model parameters, the damping symbol log(1 + r^{2 theta}), the characteristic
// roots of  lambda^2 + log(1 + r^{2 theta}) lambda + r^2 = 0, and the
// thresholds that partition the frequency axis.

namespace logdamp {

class ModelParams {
 public:
  /// Throws DomainError unless n >= 1 and 0 < theta < 1/2.
  ModelParams(int n, double theta);

  int n() const noexcept { return n_; }
  double theta() const noexcept { return theta_; }

  bool operator==(const ModelParams&) const = default;

 private:
  int n_;
  double theta_;
};

/// log(1 + r^{2 theta}); zero at r = 0 and strictly increasing.
double damping_symbol(double r, const ModelParams& p);

/// log^2(1 + r^{2 theta}) - 4 r^2. Positive on (0, delta), negative beyond.
double discriminant(double r, const ModelParams& p);

/// Frequencies with |discriminant| < kDegenerateTol * (L^2 + 4 r^2) are treated
/// as a double root.
inline constexpr double kDegenerateTol = 1e-9;

enum class Zone { Low, Degenerate, High };

const char* to_string(Zone z) noexcept;

/// Characteristic roots at one frequency.
///
/// Every zone fills `a` = log(1 + r^{2 theta}) / 2 and `gap`:
///   Low:        real roots, gap = sqrt(disc) = lambda_plus - lambda_minus;
///   High:       roots -a +/- i b with b = gap = sqrt(-disc) / 2;
///   Degenerate: gap = 0 and lambda_plus = lambda_minus = -a.
/// In the High zone lambda_plus and lambda_minus hold the common real part -a.
struct CharRoots {
  Zone zone = Zone::Low;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double a = 0.0;
  double gap = 0.0;
  double discriminant = 0.0;

  /// Imaginary part of the complex pair (High zone), zero elsewhere.
  double b() const noexcept { return zone == Zone::High ? gap : 0.0; }
};

/// Requires r > 0. lambda_plus is evaluated as -2 r^2 / (L + sqrt(disc)) so it
/// keeps full relative precision when r^2 << L^2.
CharRoots char_roots(double r, const ModelParams& p);

struct Thresholds {
  double delta = 0.0;      ///< root of log(1 + r^{2 theta}) = 2 r on (0, 1)
  double eta = 0.0;        ///< 25^{-1/(2 - 4 theta)}
  double eta_cubed = 0.0;
  double beta = 0.0;       ///< root of (2 / 25^3) log^2(1 + r^{2 theta}) = 4 r^2
  double delta_residual = 0.0;  ///< |log(1 + delta^{2 theta}) - 2 delta|
  double beta_residual = 0.0;

  /// beta <= eta^3 < eta < delta < 1
  bool chain_holds() const noexcept;
};

/// Throws RootNotBracketed if either sign-change search fails.
Thresholds compute_thresholds(const ModelParams& p);

/// f(r) = log(1 + r^{2 theta}) - 2 r, whose unique positive root is delta.
double delta_function(double r, const ModelParams& p);

/// g(s) = 1 + sqrt(1 - 4 s^6 / log^2(1 + s^{6 theta})) on [0, delta], g(0) = 2.
/// Throws DomainError for s outside [0, delta].
double g_function(double s, const ModelParams& p, const Thresholds& th);

/// R(r) = 1/(lambda_plus - lambda_minus) - 1/log(1 + r^{2 theta}), written as
/// 4 r^2 / (L^3 sqrt(1 - q) (1 + sqrt(1 - q))) with q = 4 r^2 / L^2.
/// Throws DomainError for r outside (0, eta^3].
double r_function(double r, const ModelParams& p, const Thresholds& th);

}  // namespace logdamp
