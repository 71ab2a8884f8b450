#include "logdamp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "logdamp/errors.hpp"

namespace logdamp {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0)) {
    throw DomainError("quadrature tolerances must satisfy rel_tol > 0, abs_tol >= 0");
  }
  if (!(lower >= 0.0) || !(upper > lower)) {
    throw DomainError("quadrature interval must satisfy 0 <= lower < upper");
  }
  for (std::size_t i = 0; i < split_points.size(); ++i) {
    if (!(split_points[i] > 0.0) || !std::isfinite(split_points[i])) {
      throw DomainError("split points must be finite and positive");
    }
    if (i > 0 && !(split_points[i] > split_points[i - 1])) {
      throw DomainError("split points must be strictly increasing");
    }
  }
}

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

class PanelIntegrator {
 public:
  PanelIntegrator(const std::function<double(double)>& f, const QuadratureSpec& spec)
      : f_(f), spec_(spec) {}

  /// Integral over [a, b], bisected until each piece meets 0.1 * rel_tol
  /// relative to its own L1 norm or max_depth is reached.
  double operator()(double a, double b) { return adapt(a, b, 0); }

  double total() const noexcept { return total_; }
  double error() const noexcept { return error_; }
  double l1() const noexcept { return l1_; }
  std::size_t evaluations() const noexcept { return evaluations_; }
  void add_error(double e) { error_ += e; }

  bool negligible(double contribution) const {
    return std::abs(contribution) <= 1e-3 * (spec_.rel_tol * l1_ + spec_.abs_tol);
  }

 private:
  // The rule is applied without Boost's own recursion: in 1.74 that recursion
  // compares an error measured on [-1, 1] against a tolerance in the panel's
  // units, so short panels never converge. Pulling each piece back to [-1, 1]
  // puts value, error and L1 on one scale.
  double adapt(double a, double b, unsigned depth) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto pulled_back = [this, a, b, mid, half](double s) {
      ++evaluations_;
      const double x = std::clamp(mid + half * s, a, b);
      const double y = half * f_(x);
      if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg << "integrand is not finite at r = " << x << " (value " << y / half << ")";
        throw NonFiniteIntegrand(msg.str());
      }
      return y;
    };
    double err = 0.0;
    double l1 = 0.0;
    const double v = Rule::integrate(pulled_back, -1.0, 1.0, 0, 0.0, &err, &l1);
    const bool converged = err <= 0.1 * spec_.rel_tol * l1 || !(mid > a && mid < b);
    if (converged || depth >= spec_.max_depth || splits_ >= spec_.max_subdivisions) {
      error_ += err;
      l1_ += l1;
      total_ += v;
      return v;
    }
    ++splits_;
    return adapt(a, mid, depth + 1) + adapt(mid, b, depth + 1);
  }

  const std::function<double(double)>& f_;
  const QuadratureSpec& spec_;
  double total_ = 0.0;
  double error_ = 0.0;
  double l1_ = 0.0;
  std::size_t evaluations_ = 0;
  std::size_t splits_ = 0;
};

}  // namespace

IntegralResult integrate_radial(const std::function<double(double)>& f,
                                const QuadratureSpec& spec) {
  spec.validate();
  const bool to_zero = spec.lower == 0.0 && spec.graded_origin;
  const bool to_infinity = std::isinf(spec.upper);

  std::vector<double> anchors;
  if (!to_zero) anchors.push_back(spec.lower);
  for (double s : spec.split_points) {
    if (s > spec.lower && s < spec.upper) anchors.push_back(s);
  }
  if (!to_infinity) anchors.push_back(spec.upper);
  if (anchors.empty()) anchors.push_back(1.0);

  PanelIntegrator integrate(f, spec);

  // Finite part: panels no wider than a factor two between consecutive anchors.
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const double a = anchors[i];
    const double b = anchors[i + 1];
    const int pieces = a > 0.0 ? std::max(1, static_cast<int>(std::ceil(std::log2(b / a)))) : 1;
    double left = a;
    for (int k = 1; k <= pieces; ++k) {
      const double right = k == pieces ? b : a * std::pow(b / a, static_cast<double>(k) / pieces);
      integrate(left, right);
      left = right;
    }
  }

  struct SweepEnd {
    double edge;
    double last;
    double previous;
  };
  auto geometric_sweep = [&](double start, double factor, double floor_radius) {
    int quiet = 0;
    double edge = start;
    double last = 0.0;
    double previous = 0.0;
    for (int k = 0; k < spec.max_geometric_panels; ++k) {
      const double next = edge * factor;
      if (!(next > 0.0) || !std::isfinite(next)) break;
      const double v = factor > 1.0 ? integrate(edge, next) : integrate(next, edge);
      edge = next;
      previous = last;
      last = v;
      const bool past_floor = factor > 1.0 || edge <= floor_radius || floor_radius <= 0.0;
      quiet = integrate.negligible(v) ? quiet + 1 : 0;
      if (past_floor && quiet >= 3) return SweepEnd{edge, last, previous};
    }
    std::ostringstream msg;
    msg << "geometric panel sweep did not settle (edge " << edge << ", last panel " << last
        << ")";
    throw ToleranceNotMet(msg.str());
  };

  if (to_infinity) {
    // The neglected tail is charged to the error: the last panel, or the
    // geometric series it starts when the panels shrink by a steady ratio.
    const SweepEnd end = geometric_sweep(anchors.back(), 2.0, 0.0);
    const double q = end.previous != 0.0 ? std::abs(end.last / end.previous) : 0.0;
    const double tail = q < 1.0 ? std::abs(end.last) * std::max(1.0, q / (1.0 - q))
                                : std::abs(end.last);
    integrate.add_error(tail);
  }
  if (to_zero) {
    const SweepEnd end = geometric_sweep(anchors.front(), 0.5, spec.descent_floor);
    integrate(0.0, end.edge);
  }

  IntegralResult result{integrate.total(), integrate.error(), integrate.evaluations()};
  if (!(result.error_estimate <= spec.rel_tol * integrate.l1() + spec.abs_tol)) {
    std::ostringstream msg;
    msg << "quadrature error estimate " << result.error_estimate << " exceeds budget "
        << spec.rel_tol * integrate.l1() + spec.abs_tol << " (value " << result.value << ")";
    throw ToleranceNotMet(msg.str());
  }
  return result;
}

namespace {

// (1 + r^a)^{-t} r^q evaluated in log form so large t neither underflows early
// nor loses precision.
double power_kernel(double r, double t, double a, double q) {
  if (r == 0.0) return q == 0.0 ? 1.0 : 0.0;
  return std::exp(-t * std::log1p(std::pow(r, a)) + q * std::log(r));
}

}  // namespace

double weighted_power_integral(double t, double a, double q, double upper, double rel_tol) {
  if (!(q > -1.0)) throw DomainError("weighted_power_integral requires q > -1");
  if (!(t > 0.0)) throw DomainError("weighted_power_integral requires t > 0");
  if (!(a > 0.0)) throw DomainError("weighted_power_integral requires a > 0");
  if (!(upper > 0.0 && upper <= 1.0)) {
    throw DomainError("weighted_power_integral requires 0 < upper <= 1");
  }
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 0.0;
  spec.upper = upper;
  // The integrand's mass sits near r ~ t^{-1/a}; descend well below it.
  spec.descent_floor = std::min(upper, 1e-3 * std::pow(t, -1.0 / a));
  return integrate_radial([&](double r) { return power_kernel(r, t, a, q); }, spec).value;
}

double i_p(double t, double p, double rel_tol) {
  if (!(p > -1.0)) throw DomainError("I_p requires p > -1");
  return weighted_power_integral(t, 2.0, p, 1.0, rel_tol);
}

double j_p(double t, double p, double rel_tol) {
  if (!(t > 0.5 * (p + 1.0))) {
    std::ostringstream msg;
    msg << "J_p diverges for t <= (p + 1)/2 (t = " << t << ", p = " << p << ")";
    throw Divergent(msg.str());
  }
  if (!(t > 1.0)) throw DomainError("J_p requires t > 1");
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 0.0;
  spec.lower = 1.0;
  return integrate_radial([&](double r) { return power_kernel(r, t, 2.0, p); }, spec).value;
}

MiddleBandCheck middle_band_bound_check(double t, double eta_low, double p) {
  if (!(eta_low > 0.0 && eta_low <= 1.0)) {
    throw DomainError("middle_band_bound_check requires 0 < eta_low <= 1");
  }
  auto band = [&](double time) {
    if (eta_low == 1.0) return 0.0;
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 0.0;
    spec.lower = eta_low;
    spec.upper = 1.0;
    return integrate_radial([&](double r) { return power_kernel(r, time, 2.0, p); }, spec).value;
  };
  const double base = 1.0 + eta_low * eta_low;
  const double c = band(1.0) * base;
  return {band(t), c * std::pow(base, -t)};
}

double sinh_bound_supremum(double x_max, int samples) {
  // sinh(x) / (x e^x) = (1 - e^{-2x}) / (2x)
  double sup = 0.0;
  const double x_min = 1e-12;
  for (int i = 0; i < samples; ++i) {
    const double x = x_min * std::pow(x_max / x_min, static_cast<double>(i) / (samples - 1));
    sup = std::max(sup, -std::expm1(-2.0 * x) / (2.0 * x));
  }
  return sup;
}

}  // namespace logdamp
