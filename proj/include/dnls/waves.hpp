#pragma once

#include <optional>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"
#include "dnls/spectral.hpp"

namespace dnls::waves {

/// gamma = 1 + 16 b / 3.  Rejects negative b.
double gamma_of(double b);

/// Real positive hump of the travelling wave,
/// phi~(x) = {2*gap / (-omega1 + sqrt(omega1^2 + gamma*gap) * cosh(sqrt(gap)*x))}^{1/2}.
double tilde_profile(const Omega& omega, const Params& p, double x);

/// Cumulative mass integral m(x) = int_{-inf}^x phi~^2, evaluated from a
/// spectral antiderivative on a grid plus the analytic exponential tail
/// below -L (and, symmetrically, above +L).
class MassIntegral {
 public:
  MassIntegral(const Omega& omega, const Params& p, const Grid& g);

  double operator()(double x) const;  // any real x
  double at_node(int j) const;
  double total() const;               // int over the whole line

 private:
  Grid grid_;
  double decay_ = 0.0;       // sqrt(gap)
  double tail_coeff_ = 0.0;  // prefactor of the exp tail
  double left_tail_ = 0.0;   // int_{-inf}^{-L}
  spectral::Antiderivative anti_;
};

/// Phase theta(x) = (omega1/2) x - (1/4) m(x) of the complex profile.
double phase(const Omega& omega, const Params& p, double x);

/// Grid with the default half-length L = 60/sqrt(gap).
Grid default_grid(const Omega& omega, int n = 4096);

/// Complex solitary-wave profile sampled on the grid.  Throws GridTooShort
/// when the boundary tail exceeds 1e-12 of the peak.
Field profile(const Omega& omega, const Params& p, const Grid& g);

/// Threshold function g(xi) = (2(gamma-1)/xi) * atan((1 + sqrt(1+xi^2))/xi).
double g_function(double xi, const Params& p);

/// Unique root of g(xi) = 1; requires b > 0 (throws NoRoot otherwise).
double xi_hat(const Params& p);

/// Critical velocity ratio kappa = (1 + xi_hat^2/gamma)^{-1/2}, in (0,1).
double kappa(const Params& p);

// Closed forms of the charges on the wave family and of the d'' data.
double closed_q0(const Omega& omega, const Params& p);
double closed_q1(const Omega& omega, const Params& p);
double closed_det_d2(const Omega& omega, const Params& p);
double d2_00_entry(const Omega& omega, const Params& p);

enum class Verdict { Stable, Unstable, Borderline };
const char* to_string(Verdict v);

struct ClassificationReport {
  std::optional<double> kappa;  // absent when b = 0
  double q1_closed = 0.0;
  double det_d2 = 0.0;
  double d2_00 = 0.0;
  Verdict verdict = Verdict::Stable;
};

/// Stability verdict from the sign of Q1(phi_omega); |Q1| <= tol*(1+|omega|)
/// maps to Borderline.  b = 0 is always Stable.
ClassificationReport classify(const Omega& omega, const Params& p,
                              double tol = 1e-9);

}  // namespace dnls::waves
