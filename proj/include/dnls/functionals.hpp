#pragma once

#include <array>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls::functionals {

// Real L2 inner product (v,w) = Re h sum v conj(w); the trapezoid rule is
// spectrally accurate for smooth periodic data.
double inner_l2(const Field& v, const Field& w);
double norm_l2(const Field& v);

// H1 inner product computed in Fourier space with weight (1 + k^2).
double inner_h1(const Field& v, const Field& w);
double norm_h1(const Field& v);

double charge0(const Field& v);  // Q0 = ||v||^2 / 2
double charge1(const Field& v);  // Q1 = (i dx v, v) / 2

/// E(v) = ||dx v||^2/2 - (i|v|^2 dx v, v)/4 - b ||v||_L6^6 / 6.
double energy(const Field& v, const Params& p);

/// Gradient E'(v) = -dxx v - i |v|^2 dx v - b |v|^4 v.
Field energy_gradient(const Field& v, const Params& p);

/// L_omega(v) = ||dx v||^2 + omega0 ||v||^2 + omega1 (i dx v, v).
double l_form(const Omega& omega, const Field& v);

/// Sharp coercivity constant of L_omega over the grid's wavenumbers:
/// min_k (k^2 - omega1 k + omega0) / (1 + k^2).
double coercivity_constant(const Omega& omega, const Grid& g);

/// Action S_omega = E + omega0 Q0 + omega1 Q1; checked against the
/// equivalent L-form expression (InternalInconsistency on disagreement).
double action(const Omega& omega, const Field& v, const Params& p);

/// Nehari functional K_omega(v) = L_omega(v) - (i|v|^2 dx v, v) - b||v||_L6^6.
double nehari(const Omega& omega, const Field& v, const Params& p);

/// Positive scaling lambda* with K_omega(lambda* v) = 0 from the closed-form
/// root of the quadratic in lambda^2.  Requires v != 0 and b > 0.
double nehari_rescale(const Omega& omega, const Field& v, const Params& p);

/// d(omega) = S_omega(phi_omega) by quadrature on the default grid.
double d_value(const Omega& omega, const Params& p, int n = 4096);

/// d'(omega) = (Q0(phi_omega), Q1(phi_omega)) from the closed forms.
std::array<double, 2> d_grad(const Omega& omega, const Params& p);

struct Hessian2 {
  double a00 = 0.0, a01 = 0.0, a11 = 0.0;  // symmetric 2x2

  double det() const { return a00 * a11 - a01 * a01; }
  double trace() const { return a00 + a11; }
  std::array<double, 2> eigenvalues() const;
};

/// Central differences of the closed-form gradient, symmetrized.  With
/// `richardson` the h and h/2 stencils are combined to fourth order.
Hessian2 d_hessian_fd(const Omega& omega, const Params& p, double step = 1e-4,
                      bool richardson = false);

/// Group element (phase, translation); theta0 is kept in [0, 2pi).
struct ThetaPair {
  double theta0 = 0.0;
  double theta1 = 0.0;

  ThetaPair() = default;
  ThetaPair(double t0, double t1);
};

/// T(theta) v = e^{i theta0} v(. - theta1), translation done spectrally.
Field translate(const ThetaPair& theta, const Field& v);

}  // namespace dnls::functionals
