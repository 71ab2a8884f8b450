#include "logdamp/roots.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "logdamp/errors.hpp"

namespace logdamp {

namespace {

bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

RootResult bisect_newton(const std::function<double(double)>& f,
                         const std::function<double(double)>& df,
                         double lo, double hi, double abs_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if (!opposite_signs(flo, fhi)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f = " << flo << ", " << fhi;
    throw RootNotBracketed(msg.str());
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  int iterations = 0;
  while (hi - lo > abs_tol && hi - lo > 4.0 * eps * std::abs(hi) && iterations < 2000) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    ++iterations;
    if (fmid == 0.0) return {mid, 0.0, iterations};
    if (opposite_signs(flo, fmid)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }

  double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double best_f = std::abs(flo) < std::abs(fhi) ? flo : fhi;

  // Newton polish
  const double slope = df(best);
  if (slope != 0.0 && std::isfinite(slope)) {
    const double cand = best - best_f / slope;
    if (cand >= lo && cand <= hi) {
      const double fc = f(cand);
      if (std::abs(fc) < std::abs(best_f)) {
        best = cand;
        best_f = fc;
      }
    }
  }
  return {best, best_f, iterations};
}

double bracket_downward(const std::function<double(double)>& f, double hi, double min_lo) {
  const double fhi = f(hi);
  double r = hi;
  while (r > min_lo) {
    r *= 0.5;
    const double fr = f(r);
    if (opposite_signs(fr, fhi)) return r;
  }
  std::ostringstream msg;
  msg << "no sign change below " << hi << " down to " << min_lo;
  throw RootNotBracketed(msg.str());
}

}  // namespace logdamp
