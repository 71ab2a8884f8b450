#pragma once

#include <functional>

namespace logdamp {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Bisection on [lo, hi] (f(lo) and f(hi) of opposite sign) until the bracket
/// is narrower than abs_tol or four ulps of its upper end, followed by a single
/// Newton step that is kept only if it stays inside the final bracket and
/// lowers |f|. Throws RootNotBracketed when the endpoints share a sign.
RootResult bisect_newton(const std::function<double(double)>& f,
                         const std::function<double(double)>& df,
                         double lo, double hi, double abs_tol = 1e-14);

/// Searches downward from hi by halving for a point where f has the sign
/// opposite to f(hi). Returns that point; throws RootNotBracketed when none is
/// found above min_lo.
double bracket_downward(const std::function<double(double)>& f, double hi,
                        double min_lo = 1e-300);

}  // namespace logdamp
