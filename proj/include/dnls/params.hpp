#pragma once

#include <cmath>

#include "dnls/errors.hpp"

namespace dnls {

/// Coupling of the quintic term and the derived combination gamma = 1 + 16b/3.
struct Params {
  double b = 0.0;
  double gamma = 1.0;

  Params() = default;
  explicit Params(double b_) : b(b_), gamma(1.0 + 16.0 * b_ / 3.0) {
    if (!(b_ >= 0.0)) throw InvalidParams("coupling b must satisfy b >= 0");
  }
};

/// Frequency pair (omega0, omega1) restricted to omega1^2 < 4*omega0.
struct Omega {
  double omega0 = 1.0;
  double omega1 = 0.0;

  Omega() = default;
  Omega(double w0, double w1) : omega0(w0), omega1(w1) {
    if (!(w1 * w1 < 4.0 * w0))
      throw InvalidOmega("omega1^2 < 4*omega0 violated");
  }

  // 4*omega0 - omega1^2, strictly positive on the admissible set.
  double gap() const { return 4.0 * omega0 - omega1 * omega1; }
  double norm() const { return std::hypot(omega0, omega1); }
};

}  // namespace dnls
