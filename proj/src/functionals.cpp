#include "dnls/functionals.hpp"

#include <cmath>
#include <limits>

#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace dnls::functionals {

namespace {

// (i |v|^2 dx v, v) with a spectral derivative
double quartic_term(const Field& v) {
  const Field dv = spectral::derivative(v);
  const double h = v.grid.spacing();
  double acc = 0.0;
  for (size_t j = 0; j < v.v.size(); ++j) {
    const double a2 = std::norm(v.v[j]);
    acc += a2 * (cplx(0.0, 1.0) * dv.v[j] * std::conj(v.v[j])).real();
  }
  return h * acc;
}

double sextic_term(const Field& v) {
  const double h = v.grid.spacing();
  double acc = 0.0;
  for (const cplx& z : v.v) {
    const double a2 = std::norm(z);
    acc += a2 * a2 * a2;
  }
  return h * acc;
}

double grad_norm_sq(const Field& v) {
  const Field dv = spectral::derivative(v);
  double acc = 0.0;
  for (const cplx& z : dv.v) acc += std::norm(z);
  return v.grid.spacing() * acc;
}

}  // namespace

double inner_l2(const Field& v, const Field& w) {
  require_same_grid(v, w);
  double acc = 0.0;
  for (size_t j = 0; j < v.v.size(); ++j)
    acc += (v.v[j] * std::conj(w.v[j])).real();
  return v.grid.spacing() * acc;
}

double norm_l2(const Field& v) { return std::sqrt(inner_l2(v, v)); }

double inner_h1(const Field& v, const Field& w) {
  require_same_grid(v, w);
  const std::vector<cplx> vh = spectral::fft(v);
  const std::vector<cplx> wh = spectral::fft(w);
  const Grid& g = v.grid;
  double acc = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const double kk = g.wavenumber(k);
    acc += (1.0 + kk * kk) *
           (vh[static_cast<size_t>(k)] * std::conj(wh[static_cast<size_t>(k)]))
               .real();
  }
  return g.spacing() / g.n * acc;
}

double norm_h1(const Field& v) { return std::sqrt(inner_h1(v, v)); }

double charge0(const Field& v) { return 0.5 * inner_l2(v, v); }

double charge1(const Field& v) {
  const Field dv = spectral::derivative(v);
  const double h = v.grid.spacing();
  double acc = 0.0;
  for (size_t j = 0; j < v.v.size(); ++j)
    acc += (cplx(0.0, 1.0) * dv.v[j] * std::conj(v.v[j])).real();
  return 0.5 * h * acc;
}

double energy(const Field& v, const Params& p) {
  return 0.5 * grad_norm_sq(v) - 0.25 * quartic_term(v) -
         p.b / 6.0 * sextic_term(v);
}

Field energy_gradient(const Field& v, const Params& p) {
  const Field dv = spectral::derivative(v);
  const Field ddv = spectral::derivative(v, 2);
  Field g(v.grid);
  for (size_t j = 0; j < v.v.size(); ++j) {
    const double a2 = std::norm(v.v[j]);
    g.v[j] = -ddv.v[j] - cplx(0.0, 1.0) * a2 * dv.v[j] -
             p.b * a2 * a2 * v.v[j];
  }
  return g;
}

double l_form(const Omega& omega, const Field& v) {
  return grad_norm_sq(v) + omega.omega0 * inner_l2(v, v) +
         2.0 * omega.omega1 * charge1(v);
}

double coercivity_constant(const Omega& omega, const Grid& g) {
  double c = std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.n; ++k) {
    const double kk = g.wavenumber(k);
    const double sym = (kk * kk - omega.omega1 * kk + omega.omega0) /
                       (1.0 + kk * kk);
    c = std::min(c, sym);
  }
  return c;
}

double action(const Omega& omega, const Field& v, const Params& p) {
  const double q4 = quartic_term(v);
  const double q6 = sextic_term(v);
  const double a = energy(v, p) + omega.omega0 * charge0(v) +
                   omega.omega1 * charge1(v);
  const double b = 0.5 * l_form(omega, v) - 0.25 * q4 - p.b / 6.0 * q6;
  if (std::fabs(a - b) > 1e-12 * (1.0 + std::fabs(a) + std::fabs(b)))
    throw InternalInconsistency("the two algebraic forms of S disagree");
  return a;
}

double nehari(const Omega& omega, const Field& v, const Params& p) {
  return l_form(omega, v) - quartic_term(v) - p.b * sextic_term(v);
}

double nehari_rescale(const Omega& omega, const Field& v, const Params& p) {
  if (norm_l2(v) == 0.0) throw ZeroField("cannot rescale the zero field");
  if (!(p.b > 0.0)) throw InvalidArgument("nehari_rescale requires b > 0");
  const double a = p.b * sextic_term(v);       // lambda^4 coefficient
  const double q = quartic_term(v);            // lambda^2 coefficient
  const double l = l_form(omega, v);           // constant term (positive)
  // positive root of a y^2 + q y - l = 0, y = lambda^2
  const double disc = std::sqrt(q * q + 4.0 * a * l);
  const double y = (q >= 0.0) ? 2.0 * l / (q + disc) : (disc - q) / (2.0 * a);
  return std::sqrt(y);
}

double d_value(const Omega& omega, const Params& p, int n) {
  const Field phi = waves::profile(omega, p, waves::default_grid(omega, n));
  return action(omega, phi, p);
}

std::array<double, 2> d_grad(const Omega& omega, const Params& p) {
  return {waves::closed_q0(omega, p), waves::closed_q1(omega, p)};
}

std::array<double, 2> Hessian2::eigenvalues() const {
  const double mean = 0.5 * trace();
  const double r = std::sqrt(std::max(0.0, mean * mean - det()));
  return {mean - r, mean + r};
}

namespace {

Hessian2 hessian_stencil(const Omega& omega, const Params& p, double step) {
  const double w0 = omega.omega0, w1 = omega.omega1;
  auto inside = [](double a0, double a1) { return a1 * a1 < 4.0 * a0; };
  if (!inside(w0 + step, w1) || !inside(w0 - step, w1) ||
      !inside(w0, w1 + step) || !inside(w0, w1 - step))
    throw StepLeavesOmega("finite-difference stencil exits the omega domain");

  const auto gp0 = d_grad(Omega(w0 + step, w1), p);
  const auto gm0 = d_grad(Omega(w0 - step, w1), p);
  const auto gp1 = d_grad(Omega(w0, w1 + step), p);
  const auto gm1 = d_grad(Omega(w0, w1 - step), p);

  const double d00 = (gp0[0] - gm0[0]) / (2.0 * step);
  const double d10 = (gp0[1] - gm0[1]) / (2.0 * step);
  const double d01 = (gp1[0] - gm1[0]) / (2.0 * step);
  const double d11 = (gp1[1] - gm1[1]) / (2.0 * step);

  Hessian2 h;
  h.a00 = d00;
  h.a01 = 0.5 * (d01 + d10);
  h.a11 = d11;
  return h;
}

}  // namespace

Hessian2 d_hessian_fd(const Omega& omega, const Params& p, double step,
                      bool richardson) {
  const Hessian2 h = hessian_stencil(omega, p, step);
  if (!richardson) return h;
  const Hessian2 h2 = hessian_stencil(omega, p, 0.5 * step);
  Hessian2 r;
  r.a00 = (4.0 * h2.a00 - h.a00) / 3.0;
  r.a01 = (4.0 * h2.a01 - h.a01) / 3.0;
  r.a11 = (4.0 * h2.a11 - h.a11) / 3.0;
  return r;
}

ThetaPair::ThetaPair(double t0, double t1) : theta0(t0), theta1(t1) {
  theta0 = std::fmod(theta0, 2.0 * M_PI);
  if (theta0 < 0.0) theta0 += 2.0 * M_PI;
}

Field translate(const ThetaPair& theta, const Field& v) {
  std::vector<cplx> hat = spectral::fft(v);
  spectral::apply_shift(v.grid, hat, theta.theta1);
  Field r = spectral::field_from_hat(v.grid, hat);
  const cplx rot = std::polar(1.0, theta.theta0);
  for (cplx& z : r.v) z *= rot;
  return r;
}

}  // namespace dnls::functionals
