#include "dnls/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnls/rootfind.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace dnls::modulation {

namespace {

namespace sp = dnls::spectral;
namespace fn = dnls::functionals;

constexpr cplx kI(0.0, 1.0);

std::array<double, 2> solve2x2(const std::array<std::array<double, 2>, 2>& m,
                               const std::array<double, 2>& rhs) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double scale = std::max({std::fabs(m[0][0]), std::fabs(m[0][1]),
                                 std::fabs(m[1][0]), std::fabs(m[1][1])});
  if (std::fabs(det) <= 1e-12 * scale * scale)
    throw SingularH("2x2 system is numerically singular");
  return {(rhs[0] * m[1][1] - rhs[1] * m[0][1]) / det,
          (rhs[1] * m[0][0] - rhs[0] * m[1][0]) / det};
}

// T(alpha) phi together with T(alpha) T_1' phi = -dx T(alpha) phi,
// built from the precomputed spectrum of phi.
struct ShiftedProfile {
  Field phi_s;       // T(alpha) phi
  Field dphi_s_neg;  // -dx T(alpha) phi

  ShiftedProfile(const Grid& g, const std::vector<cplx>& phi_hat,
                 double alpha0, double alpha1, bool with_derivative) {
    std::vector<cplx> hat = phi_hat;
    sp::apply_shift(g, hat, alpha1);
    phi_s = sp::field_from_hat(g, hat);
    const cplx rot = std::polar(1.0, alpha0);
    for (cplx& z : phi_s.v) z *= rot;
    if (with_derivative) {
      sp::apply_derivative(g, hat, 1);
      dphi_s_neg = sp::field_from_hat(g, hat);
      for (cplx& z : dphi_s_neg.v) z *= -rot;
    }
  }
};

}  // namespace

Field generator(int j, const Field& u) {
  if (j == 0) return kI * u;
  if (j == 1) return cplx(-1.0, 0.0) * sp::derivative(u);
  throw InvalidArgument("generator index must be 0 or 1");
}

ModulationState solve_alpha(const Field& u, const Field& phi,
                            const AlphaOptions& opts) {
  require_same_grid(u, phi);
  const Grid& g = u.grid;
  const std::vector<cplx> u_hat = sp::fft(u);
  const std::vector<cplx> phi_hat = sp::fft(phi);

  const Field t0u = generator(0, u);
  const Field t1u = generator(1, u);

  double a0, a1;
  if (opts.initial_guess) {
    a0 = (*opts.initial_guess)[0];
    a1 = (*opts.initial_guess)[1];
  } else {
    // cross-correlation over all grid shifts in one inverse transform
    std::vector<cplx> cross(u_hat.size());
    for (size_t k = 0; k < cross.size(); ++k)
      cross[k] = u_hat[k] * std::conj(phi_hat[k]);
    const std::vector<cplx> z = sp::ifft(g, cross);
    size_t best = 0;
    for (size_t m = 1; m < z.size(); ++m)
      if (std::abs(z[m]) > std::abs(z[best])) best = m;
    a1 = static_cast<double>(best) * g.spacing();
    if (a1 > g.half_length) a1 -= 2.0 * g.half_length;
    a0 = std::arg(z[best]);
  }

  {
    const ShiftedProfile s(g, phi_hat, a0, a1, false);
    if (fn::norm_h1(u - s.phi_s) >
        opts.tube_radius_factor * fn::norm_h1(phi))
      throw NotInTube("initial residual exceeds the tube radius");
  }

  const double tol = 1e-10 * fn::norm_l2(u) * fn::norm_h1(phi);

  auto residual = [&](double b0, double b1) -> std::array<double, 2> {
    const ShiftedProfile s(g, phi_hat, b0, b1, false);
    return {fn::inner_l2(t0u, s.phi_s), fn::inner_l2(t1u, s.phi_s)};
  };

  ModulationState st;
  st.alpha0 = a0;
  st.alpha1 = a1;
  std::array<double, 2> f = residual(a0, a1);

  for (int it = 0; it < opts.max_iterations; ++it) {
    const ShiftedProfile s(g, phi_hat, st.alpha0, st.alpha1, true);
    const Field t0phi = kI * s.phi_s;
    st.h_matrix = {{{fn::inner_l2(t0u, t0phi), fn::inner_l2(t0u, s.dphi_s_neg)},
                    {fn::inner_l2(t1u, t0phi), fn::inner_l2(t1u, s.dphi_s_neg)}}};
    f = {fn::inner_l2(t0u, s.phi_s), fn::inner_l2(t1u, s.phi_s)};
    if (std::fabs(f[0]) <= tol && std::fabs(f[1]) <= tol) {
      st.residuals = f;
      st.converged = true;
      return st;
    }

    const std::array<double, 2> delta = solve2x2(st.h_matrix, f);
    const double fnorm = std::hypot(f[0], f[1]);
    double step = 1.0;
    for (int damp = 0; damp < 8; ++damp) {
      const std::array<double, 2> trial =
          residual(st.alpha0 - step * delta[0], st.alpha1 - step * delta[1]);
      if (std::hypot(trial[0], trial[1]) < fnorm || damp == 7) {
        st.alpha0 -= step * delta[0];
        st.alpha1 -= step * delta[1];
        break;
      }
      step *= 0.5;
    }
  }
  st.residuals = f;
  throw NoConvergence("modulation Newton iteration did not converge");
}

ModulationState solve_alpha(const Field& u, const Omega& omega,
                            const Params& p, const AlphaOptions& opts) {
  return solve_alpha(u, waves::profile(omega, p, u.grid), opts);
}

namespace {

Field profile_derivative(const Omega& omega, const Params& p, const Grid& g,
                         int j, double h) {
  auto at = [&](double d) {
    const Omega w = (j == 0) ? Omega(omega.omega0 + d, omega.omega1)
                             : Omega(omega.omega0, omega.omega1 + d);
    return waves::profile(w, p, g);
  };
  auto central = [&](double hh) {
    Field d = at(hh) - at(-hh);
    return cplx(1.0 / (2.0 * hh), 0.0) * d;
  };
  const Field dh = central(h);
  const Field dh2 = central(0.5 * h);
  Field r = cplx(4.0 / 3.0, 0.0) * dh2;
  axpy(r, cplx(-1.0 / 3.0, 0.0), dh);
  return r;
}

}  // namespace

UnstableDirection unstable_direction(const Omega& omega, const Params& p,
                                     const Grid& g, double fd_step) {
  const auto report = waves::classify(omega, p);
  if (report.verdict != waves::Verdict::Unstable)
    throw NotUnstableRegime("unstable direction requires d'' negative definite");

  const Field phi = waves::profile(omega, p, g);
  const Field w0 = profile_derivative(omega, p, g, 0, fd_step);
  const Field w1 = profile_derivative(omega, p, g, 1, fd_step);

  const Field q0p = phi;                           // Q0'(phi)
  const Field q1p = kI * sp::derivative(phi);      // Q1'(phi)

  // pairing matrix <Q_j'(phi), w_k>, the discrete d''(omega)
  std::array<std::array<double, 2>, 2> m{
      {{fn::inner_l2(q0p, w0), fn::inner_l2(q0p, w1)},
       {fn::inner_l2(q1p, w0), fn::inner_l2(q1p, w1)}}};

  const std::array<double, 2> rhs = {-2.0 * fn::charge0(phi),
                                     -2.0 * fn::charge1(phi)};
  std::array<double, 2> c;
  try {
    c = solve2x2(m, rhs);
  } catch (const SingularH&) {
    throw SingularHessian("d''(omega) pairing matrix is singular");
  }

  UnstableDirection dir;
  dir.c = c;
  dir.hessian.a00 = m[0][0];
  dir.hessian.a01 = 0.5 * (m[0][1] + m[1][0]);
  dir.hessian.a11 = m[1][1];

  Field psi = phi;
  axpy(psi, c[0], w0);
  axpy(psi, c[1], w1);

  // orient so that <K'(phi), psi> > 0
  const double hk = 1e-6 * fn::norm_h1(phi) / std::max(fn::norm_h1(psi), 1e-300);
  Field plus = phi, minus = phi;
  axpy(plus, hk, psi);
  axpy(minus, -hk, psi);
  const double kprime = (fn::nehari(omega, plus, p) -
                         fn::nehari(omega, minus, p)) /
                        (2.0 * hk);
  if (kprime < 0.0) {
    dir.orientation = -1.0;
    psi = cplx(-1.0, 0.0) * psi;
  }
  dir.psi = psi;

  const double nl2_psi = fn::norm_l2(psi);
  dir.certificate.q0_pairing =
      fn::inner_l2(q0p, psi) / (fn::norm_l2(q0p) * nl2_psi);
  dir.certificate.q1_pairing =
      fn::inner_l2(q1p, psi) / (fn::norm_l2(q1p) * nl2_psi);
  dir.certificate.second_variation = second_variation(omega, psi, p, phi);
  return dir;
}

double second_variation(const Omega& omega, const Field& v, const Params& p,
                        const Field& phi, double fd_step) {
  const double s0 = fn::action(omega, phi, p);
  auto d2 = [&](double h) {
    Field plus = phi, minus = phi;
    axpy(plus, h, v);
    axpy(minus, -h, v);
    return (fn::action(omega, plus, p) - 2.0 * s0 +
            fn::action(omega, minus, p)) /
           (h * h);
  };
  const double dh = d2(fd_step);
  const double dh2 = d2(0.5 * fd_step);
  return (4.0 * dh2 - dh) / 3.0;
}

double second_variation(const Omega& omega, const Field& v, const Params& p,
                        double fd_step) {
  return second_variation(omega, v, p, waves::profile(omega, p, v.grid),
                          fd_step);
}

std::array<Field, 2> a_fields(const Field& u, const ModulationState& state,
                              const Field& phi) {
  if (!state.converged)
    throw InvalidArgument("a_fields requires a converged modulation state");

  const std::vector<cplx> phi_hat = sp::fft(phi);
  const ShiftedProfile s(phi.grid, phi_hat, state.alpha0, state.alpha1, true);
  const Field t0phi = kI * s.phi_s;

  const Field t0u = generator(0, u);
  const Field t1u = generator(1, u);
  const std::array<std::array<double, 2>, 2> h{
      {{fn::inner_l2(t0u, t0phi), fn::inner_l2(t0u, s.dphi_s_neg)},
       {fn::inner_l2(t1u, t0phi), fn::inner_l2(t1u, s.dphi_s_neg)}}};

  const double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
  const double scale = std::max({std::fabs(h[0][0]), std::fabs(h[0][1]),
                                 std::fabs(h[1][0]), std::fabs(h[1][1])});
  if (std::fabs(det) <= 1e-12 * scale * scale)
    throw SingularH("modulation H-matrix is singular");
  const std::array<std::array<double, 2>, 2> ginv{
      {{h[1][1] / det, -h[0][1] / det}, {-h[1][0] / det, h[0][0] / det}}};

  std::array<Field, 2> a{Field(phi.grid), Field(phi.grid)};
  for (int j = 0; j < 2; ++j) {
    Field f = cplx(ginv[static_cast<size_t>(j)][0], 0.0) * t0phi;
    axpy(f, ginv[static_cast<size_t>(j)][1], s.dphi_s_neg);
    a[static_cast<size_t>(j)] = std::move(f);
  }
  return a;
}

double a_functional(const Field& u, const ModulationState& state,
                    const Field& psi) {
  const Field psi_s =
      fn::translate(fn::ThetaPair(state.alpha0, state.alpha1), psi);
  return fn::inner_l2(kI * u, psi_s);
}

Field q_field(const Field& u, const ModulationState& state, const Field& phi,
              const Field& psi) {
  const std::vector<cplx> psi_hat = sp::fft(psi);
  const ShiftedProfile s(psi.grid, psi_hat, state.alpha0, state.alpha1, true);
  const Field iu = kI * u;
  const double c0 = fn::inner_l2(iu, kI * s.phi_s);   // (iu, T(a) T_0' psi)
  const double c1 = fn::inner_l2(iu, s.dphi_s_neg);   // (iu, T(a) T_1' psi)

  const std::array<Field, 2> a = a_fields(u, state, phi);
  Field q = s.phi_s;  // here phi_s holds the shifted psi
  axpy(q, cplx(0.0, c0), a[0]);
  axpy(q, cplx(0.0, c1), a[1]);
  return q;
}

double p_functional(const Field& u, const Field& q, const Omega& omega,
                    const Params& p) {
  const double via_e = fn::inner_l2(fn::energy_gradient(u, p), q);
  const double charge_part = omega.omega0 * fn::inner_l2(u, q) +
                             omega.omega1 * fn::inner_l2(kI * sp::derivative(u), q);
  const double via_s = via_e + charge_part;
  const double scale = 1.0 + std::fabs(via_e) +
                       omega.norm() * fn::norm_l2(u) * fn::norm_l2(q);
  if (std::fabs(via_s - via_e) > 1e-8 * scale)
    throw InternalInconsistency("P(u) disagrees between E' and S' routes");
  return via_e;
}

double lambda_root(const Field& u, const Field& q, const Omega& omega,
                   const Params& p) {
  auto f = [&](double lam) {
    Field w = u;
    axpy(w, lam, q);
    return fn::nehari(omega, w, p);
  };
  const double f0 = f(0.0);
  if (f0 == 0.0) return 0.0;

  auto bracket_side = [&](double sign) -> std::optional<std::array<double, 2>> {
    double prev = 0.0, fprev = f0;
    for (double lam = 1e-6 * sign; std::fabs(lam) <= 1.0; lam *= 2.0) {
      const double fc = f(lam);
      if (fprev * fc <= 0.0) return std::array<double, 2>{prev, lam};
      prev = lam;
      fprev = fc;
    }
    return std::nullopt;
  };

  const auto bp = bracket_side(+1.0);
  const auto bm = bracket_side(-1.0);
  if (!bp && !bm) throw NoBracket("no Nehari crossing within |lambda| <= 1");

  double best = std::numeric_limits<double>::infinity();
  for (const auto& br : {bp, bm}) {
    if (!br) continue;
    const double root = brent(f, (*br)[0], (*br)[1], 1e-15);
    if (std::fabs(root) < std::fabs(best)) best = root;
  }
  return best;
}

std::pair<double, fn::ThetaPair> orbital_distance(const Field& u,
                                                  const Field& phi) {
  require_same_grid(u, phi);
  const Grid& g = u.grid;
  const std::vector<cplx> u_hat = sp::fft(u);
  const std::vector<cplx> phi_hat = sp::fft(phi);

  std::vector<cplx> cross(u_hat.size());
  for (int k = 0; k < g.n; ++k) {
    const double kk = g.wavenumber(k);
    cross[static_cast<size_t>(k)] = (1.0 + kk * kk) *
                                    u_hat[static_cast<size_t>(k)] *
                                    std::conj(phi_hat[static_cast<size_t>(k)]);
  }

  // H1 correlation at every grid shift in one transform
  const std::vector<cplx> corr = sp::ifft(g, cross);
  const double h = g.spacing();
  size_t best = 0;
  for (size_t m = 1; m < corr.size(); ++m)
    if (std::abs(corr[m]) > std::abs(corr[best])) best = m;

  auto corr_at = [&](double s) {
    return h * sp::evaluate_interpolant(g, cross, s - g.half_length);
  };
  // direct distance at shift s with the analytically optimal phase; unlike
  // the correlation peak this stays sharp near zero distance
  auto dist_at = [&](double s) {
    return fn::norm_h1(u - fn::translate(fn::ThetaPair(std::arg(corr_at(s)), s),
                                         phi));
  };

  const double s0 = static_cast<double>(best) * h;
  const double s_opt = golden_min(dist_at, s0 - h, s0 + h, 1e-13);

  double s_wrapped = s_opt;
  if (s_wrapped > g.half_length) s_wrapped -= 2.0 * g.half_length;
  if (s_wrapped <= -g.half_length) s_wrapped += 2.0 * g.half_length;
  const fn::ThetaPair theta(std::arg(corr_at(s_opt)), s_wrapped);
  return {fn::norm_h1(u - fn::translate(theta, phi)), theta};
}

std::pair<double, fn::ThetaPair> orbital_distance(const Field& u,
                                                  const Omega& omega,
                                                  const Params& p) {
  return orbital_distance(u, waves::profile(omega, p, u.grid));
}

}  // namespace dnls::modulation
