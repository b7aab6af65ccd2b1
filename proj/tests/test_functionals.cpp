#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dnls/functionals.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"
#include "test_helpers.hpp"

using namespace dnls;
namespace fn = dnls::functionals;
using testutil::rel_err;
using testutil::seeded_field;

namespace {

const Params kP(3.0 / 16.0);
const Omega kW(1.0, 0.5);

const Grid& grid() {
  static Grid g = waves::default_grid(kW, 1024);
  return g;
}

const Field& phi() {
  static Field f = waves::profile(kW, kP, grid());
  return f;
}

Field plane_wave(const Grid& g, int mode) {
  Field f(g);
  const double k = g.wavenumber(mode);
  for (int j = 0; j < g.n; ++j)
    f.v[(size_t)j] = std::polar(1.0, k * g.node(j));
  return f;
}

}  // namespace

TEST_CASE("l2 inner product") {
  const Field v = seeded_field(grid(), 1, 1.0);
  const Field w = seeded_field(grid(), 2, 1.0);
  CHECK(fn::inner_l2(v, v) > 0.0);
  CHECK(std::fabs(fn::inner_l2(v, cplx(0, 1) * v)) < 1e-14);
  CHECK(fn::inner_l2(v, w) == doctest::Approx(fn::inner_l2(w, v)).epsilon(1e-14));
  CHECK(rel_err(fn::inner_l2(phi(), phi()), 2.0 * waves::closed_q0(kW, kP)) <
        1e-10);
  CHECK_THROWS_AS(fn::inner_l2(v, Field(waves::default_grid(kW, 512))),
                  GridMismatch);
}

TEST_CASE("h1 inner product") {
  Field c(grid());
  for (auto& z : c.v) z = cplx(0.7, -0.2);
  CHECK(rel_err(fn::inner_h1(c, c), fn::inner_l2(c, c)) < 1e-13);

  const Field pw = plane_wave(grid(), 7);
  const double k = grid().wavenumber(7);
  CHECK(rel_err(fn::inner_h1(pw, pw),
                (1.0 + k * k) * 2.0 * grid().half_length) < 1e-12);

  const Field v = seeded_field(grid(), 3, 1.0);
  const Field w = seeded_field(grid(), 4, 1.0);
  CHECK(fn::inner_h1(v, w) == doctest::Approx(fn::inner_h1(w, v)).epsilon(1e-13));

  // spectral derivative of a resolved plane wave is exact
  const Field dpw = spectral::derivative(pw);
  double maxerr = 0.0;
  for (int j = 0; j < grid().n; ++j)
    maxerr = std::max(maxerr,
                      std::abs(dpw.v[(size_t)j] - cplx(0, k) * pw.v[(size_t)j]));
  CHECK(maxerr < 1e-12);
}

TEST_CASE("charges") {
  Field r(grid());
  for (int j = 0; j < grid().n; ++j)
    r.v[(size_t)j] = std::exp(-0.1 * grid().node(j) * grid().node(j));
  CHECK(std::fabs(fn::charge1(r)) < 1e-13);  // real data carries no momentum

  const Field v = seeded_field(grid(), 5, 1.2);
  const Field v3 = cplx(3.0, 0.0) * v;
  CHECK(rel_err(fn::charge0(v3), 9.0 * fn::charge0(v)) < 1e-13);

  CHECK(rel_err(fn::charge0(phi()), waves::closed_q0(kW, kP)) < 1e-10);
  CHECK(rel_err(fn::charge1(phi()), waves::closed_q1(kW, kP)) < 1e-10);
}

TEST_CASE("energy") {
  Field zero(grid());
  CHECK(fn::energy(zero, kP) == 0.0);

  // E(phi) = -(omega1/2) Q1(phi)
  const double e = fn::energy(phi(), kP);
  CHECK(std::fabs(e + 0.5 * kW.omega1 * waves::closed_q1(kW, kP)) <
        1e-8 * (1.0 + std::fabs(e)));

  const Field v = seeded_field(grid(), 6, 1.4);
  const double ev = fn::energy(v, kP);
  for (const auto& th : {fn::ThetaPair(0.9, 3.0 * grid().spacing()),
                         fn::ThetaPair(4.4, -1.23456)}) {
    CHECK(std::fabs(fn::energy(fn::translate(th, v), kP) - ev) <
          1e-10 * (1.0 + std::fabs(ev)));
  }
}

TEST_CASE("energy gradient is the variational derivative") {
  const Field v = seeded_field(grid(), 7, 1.0);
  const Field w = seeded_field(grid(), 8, 1.0);
  const Field g = fn::energy_gradient(v, kP);
  const double h = 1e-5;
  Field vp = v, vm = v;
  axpy(vp, h, w);
  axpy(vm, -h, w);
  const double fd = (fn::energy(vp, kP) - fn::energy(vm, kP)) / (2.0 * h);
  CHECK(std::fabs(fd - fn::inner_l2(g, w)) < 1e-7 * (1.0 + std::fabs(fd)));
}

TEST_CASE("quadratic form and coercivity") {
  Field zero(grid());
  CHECK(fn::l_form(kW, zero) == 0.0);

  const Field pw = plane_wave(grid(), 11);
  const double k = grid().wavenumber(11);
  CHECK(rel_err(fn::l_form(kW, pw),
                (k * k + kW.omega0 - kW.omega1 * k) * 2.0 * grid().half_length) <
        1e-12);

  const double c1 = fn::coercivity_constant(kW, grid());
  CHECK(c1 > 0.0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Field v = seeded_field(grid(), 100 + i, 1.5);
    CHECK(fn::l_form(kW, v) >= c1 * fn::inner_h1(v, v) * (1.0 - 1e-12));
  }
}

TEST_CASE("action") {
  Field zero(grid());
  CHECK(fn::action(kW, zero, kP) == 0.0);

  // S(phi) = d(omega) assembled from the closed forms via Remark 2
  const double d = fn::action(kW, phi(), kP);
  const double expected = kW.omega0 * waves::closed_q0(kW, kP) +
                          0.5 * kW.omega1 * waves::closed_q1(kW, kP);
  CHECK(rel_err(d, expected) < 1e-8);

  for (std::uint64_t i = 0; i < 10; ++i) {
    const Field v = seeded_field(grid(), 200 + i, 1.3);
    const double s = fn::action(kW, v, kP);  // also checks both forms agree
    const Field tv = fn::translate(fn::ThetaPair(1.1, 0.77), v);
    CHECK(std::fabs(fn::action(kW, tv, kP) - s) < 1e-10 * (1.0 + std::fabs(s)));
  }
}

TEST_CASE("nehari functional") {
  Field zero(grid());
  CHECK(fn::nehari(kW, zero, kP) == 0.0);
  CHECK(std::fabs(fn::nehari(kW, phi(), kP)) < 1e-8 * fn::l_form(kW, phi()));

  // K(v) = d/dlambda S(lambda v) at lambda = 1, with quadratic convergence
  for (std::uint64_t i = 0; i < 5; ++i) {
    const Field v = seeded_field(grid(), 300 + i, 1.1);
    const double k = fn::nehari(kW, v, kP);
    auto fd = [&](double h) {
      return (fn::action(kW, cplx(1.0 + h, 0.0) * v, kP) -
              fn::action(kW, cplx(1.0 - h, 0.0) * v, kP)) /
             (2.0 * h);
    };
    const double e1 = std::fabs(fd(1e-3) - k);
    const double e2 = std::fabs(fd(5e-4) - k);
    CHECK(e2 <= 0.3 * e1 + 1e-10 * (1.0 + std::fabs(k)));
  }
}

TEST_CASE("nehari rescaling") {
  CHECK(std::fabs(fn::nehari_rescale(kW, phi(), kP) - 1.0) < 1e-6);
  CHECK_THROWS_AS(fn::nehari_rescale(kW, Field(grid()), kP), ZeroField);

  for (std::uint64_t i = 0; i < 20; ++i) {
    const Field v = seeded_field(grid(), 400 + i, 1.5);
    const double lam = fn::nehari_rescale(kW, v, kP);
    CHECK(lam > 0.0);
    const Field scaled = cplx(lam, 0.0) * v;
    CHECK(std::fabs(fn::nehari(kW, scaled, kP)) <
          1e-10 * std::fabs(fn::l_form(kW, scaled)));
    if (fn::nehari(kW, v, kP) < 0.0) CHECK(lam < 1.0);
  }
}

TEST_CASE("variational floor on the Nehari set") {
  const double floor = fn::action(kW, phi(), kP);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Field v = seeded_field(grid(), 500 + i, 1.5);
    const double lam = fn::nehari_rescale(kW, v, kP);
    const Field w = cplx(lam, 0.0) * v;
    CHECK(fn::action(kW, w, kP) >= floor - 1e-8);

    // mu(omega) > 0 surrogate: S~ = L/4 + (b/12) |w|_L6^6 stays positive
    double sextic = 0.0;
    for (const cplx& z : w.v) sextic += std::pow(std::norm(z), 3);
    sextic *= w.grid.spacing();
    CHECK(0.25 * fn::l_form(kW, w) + kP.b / 12.0 * sextic > 0.0);
  }
}

TEST_CASE("d value and gradient") {
  // frozen: at omega = (1,0), gamma = 2, d = pi/sqrt(2)
  CHECK(rel_err(fn::d_value(Omega(1.0, 0.0), kP), 2.22144146907918312) < 1e-9);

  const double h = 1e-4;
  const auto grad = fn::d_grad(kW, kP);
  const double fd0 = (fn::d_value(Omega(kW.omega0 + h, kW.omega1), kP, 2048) -
                      fn::d_value(Omega(kW.omega0 - h, kW.omega1), kP, 2048)) /
                     (2.0 * h);
  const double fd1 = (fn::d_value(Omega(kW.omega0, kW.omega1 + h), kP, 2048) -
                      fn::d_value(Omega(kW.omega0, kW.omega1 - h), kP, 2048)) /
                     (2.0 * h);
  CHECK(rel_err(fd0, grad[0]) < 1e-4);
  CHECK(rel_err(fd1, grad[1]) < 1e-4);
}

TEST_CASE("finite-difference Hessian of d") {
  for (const Omega& w : {Omega(1.0, 0.0), Omega(1.0, 0.9), Omega(1.0, 1.6),
                         Omega(2.0, -1.2), Omega(0.8, 0.6)}) {
    const auto h = fn::d_hessian_fd(w, kP);
    CHECK(rel_err(h.det(), waves::closed_det_d2(w, kP)) < 1e-4);
    CHECK(std::fabs(h.a00 - waves::d2_00_entry(w, kP)) <
          1e-4 * (1.0 + std::fabs(h.a00)));
  }

  // negative definite in the unstable regime
  const auto h = fn::d_hessian_fd(Omega(1.0, 1.6), kP);
  const auto ev = h.eigenvalues();
  CHECK(ev[0] < 0.0);
  CHECK(ev[1] < 0.0);

  // Richardson stencil agrees with the plain one
  const auto hr = fn::d_hessian_fd(Omega(1.0, 1.6), kP, 1e-4, true);
  CHECK(rel_err(hr.det(), waves::closed_det_d2(Omega(1.0, 1.6), kP)) < 1e-6);

  CHECK_THROWS_AS(fn::d_hessian_fd(Omega(1.0, 1.999), kP, 1e-2),
                  StepLeavesOmega);
}

TEST_CASE("translation group") {
  const Field v = seeded_field(grid(), 600, 1.2);
  const Field id = fn::translate(fn::ThetaPair(0.0, 0.0), v);
  CHECK(fn::norm_h1(id - v) < 1e-13);

  const fn::ThetaPair a(0.7, 1.3), b(5.9, -2.4);
  const Field lhs = fn::translate(a, fn::translate(b, v));
  const Field rhs = fn::translate(fn::ThetaPair(a.theta0 + b.theta0,
                                                a.theta1 + b.theta1),
                                  v);
  CHECK(fn::norm_h1(lhs - rhs) < 1e-12 * fn::norm_h1(v));

  const Field tv = fn::translate(a, v);
  CHECK(std::fabs(fn::charge0(tv) - fn::charge0(v)) < 1e-10);
  CHECK(std::fabs(fn::charge1(tv) - fn::charge1(v)) < 1e-10);
  CHECK(std::fabs(fn::energy(tv, kP) - fn::energy(v, kP)) < 1e-10);

  CHECK(fn::ThetaPair(-1.0, 0.0).theta0 ==
        doctest::Approx(2.0 * M_PI - 1.0).epsilon(1e-15));
}
