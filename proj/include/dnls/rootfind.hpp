#pragma once

#include <cmath>
#include <functional>

#include "dnls/errors.hpp"

namespace dnls {

/// Brent's method on a bracketing interval [a, b] with f(a)*f(b) <= 0.
/// Stops when the interval shrinks below xtol or |f| drops below ftol.
inline double brent(const std::function<double(double)>& f, double a, double b,
                    double xtol = 1e-14, double ftol = 0.0, int maxit = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw NoBracket("root not bracketed");

  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (fb * fc > 0.0) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= ftol) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

/// Golden-section minimization of f on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a,
                         double b, double xtol = 1e-12, int maxit = 200) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fcv = f(c), fdv = f(d);
  for (int it = 0; it < maxit && (b - a) > xtol; ++it) {
    if (fcv < fdv) {
      b = d; d = c; fdv = fcv;
      c = b - gr * (b - a);
      fcv = f(c);
    } else {
      a = c; c = d; fcv = fdv;
      d = a + gr * (b - a);
      fdv = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace dnls
