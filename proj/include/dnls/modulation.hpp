#pragma once

#include <array>
#include <optional>
#include <utility>

#include "dnls/functionals.hpp"
#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls::modulation {

/// Symmetry generators: j = 0 gives i*u (phase), j = 1 gives -dx u (shift).
Field generator(int j, const Field& u);

struct ModulationState {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  std::array<double, 2> residuals{0.0, 0.0};
  bool converged = false;
  // h_jk = (T_j' u, T(alpha) T_k' phi)_{L2} at the converged alpha
  std::array<std::array<double, 2>, 2> h_matrix{{{0.0, 0.0}, {0.0, 0.0}}};
};

struct AlphaOptions {
  std::optional<std::array<double, 2>> initial_guess;  // warm start
  double tube_radius_factor = 0.5;  // NotInTube gate, relative to |phi|_H1
  int max_iterations = 50;
};

/// Newton solve of the two orthogonality conditions
/// (T_j' u, T(alpha) phi)_{L2} = 0; the initial guess comes from the peak of
/// the cross-correlation with phi over all grid shifts.
ModulationState solve_alpha(const Field& u, const Field& phi,
                            const AlphaOptions& opts = {});
ModulationState solve_alpha(const Field& u, const Omega& omega,
                            const Params& p, const AlphaOptions& opts = {});

struct DirectionCertificate {
  double q0_pairing = 0.0;      // <Q0'(phi), psi> / (|phi| |psi|)_{L2}
  double q1_pairing = 0.0;      // <Q1'(phi), psi> / (|dx phi| |psi|)_{L2}
  double second_variation = 0.0;  // <S''(phi) psi, psi>, must be negative
};

struct UnstableDirection {
  Field psi;
  std::array<double, 2> c{0.0, 0.0};  // coefficients on w_0, w_1
  double orientation = 1.0;  // psi = orientation * (phi + c0 w0 + c1 w1)
  DirectionCertificate certificate;
  functionals::Hessian2 hessian;  // finite-difference d''(omega)
};

/// Unstable direction psi = phi + c0 w0 + c1 w1 with w_j = d phi/d omega_j by
/// Richardson-extrapolated central differences; c solves the 2x2 system that
/// kills both charge pairings.  The sign is chosen so that
/// <K'(phi), psi> > 0.  Requires classify(omega) = Unstable.
UnstableDirection unstable_direction(const Omega& omega, const Params& p,
                                     const Grid& g, double fd_step = 1e-5);

/// <S''_omega(phi) v, v> by a Richardson-extrapolated centered second
/// difference of the action along v (valid since S'(phi) = 0).
double second_variation(const Omega& omega, const Field& v, const Params& p,
                        double fd_step = 1e-3);
double second_variation(const Omega& omega, const Field& v, const Params& p,
                        const Field& phi, double fd_step = 1e-3);

/// a_j(u) = sum_k g_jk(u) T(alpha) T_k' phi with G = H(u)^{-1}.
std::array<Field, 2> a_fields(const Field& u, const ModulationState& state,
                              const Field& phi);

/// A(u) = (iu, T(alpha(u)) psi)_{L2}.
double a_functional(const Field& u, const ModulationState& state,
                    const Field& psi);

/// q(u) = T(alpha) psi + sum_j (iu, T(alpha) T_j' psi)_{L2} i a_j(u).
Field q_field(const Field& u, const ModulationState& state, const Field& phi,
              const Field& psi);

/// P(u) = <E'(u), q(u)>, cross-checked against <S'_omega(u), q(u)>.
double p_functional(const Field& u, const Field& q, const Omega& omega,
                    const Params& p);

/// Smallest-magnitude root of lambda -> K_omega(u + lambda q), found by an
/// expanding bracket and Brent.  Throws NoBracket beyond |lambda| = 1.
double lambda_root(const Field& u, const Field& q, const Omega& omega,
                   const Params& p);

/// inf over theta of |u - T(theta) phi|_{H1}: coarse scan over grid shifts
/// with the optimal phase taken analytically, then golden-section refinement
/// with spectral sub-grid shifts.  Returns the distance and the minimizer.
std::pair<double, functionals::ThetaPair> orbital_distance(const Field& u,
                                                           const Field& phi);
std::pair<double, functionals::ThetaPair> orbital_distance(const Field& u,
                                                           const Omega& omega,
                                                           const Params& p);

}  // namespace dnls::modulation
