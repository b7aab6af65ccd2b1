#include "dnls/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "dnls/functionals.hpp"
#include "dnls/spectral.hpp"
#include "dnls/waves.hpp"

namespace dnls::dynamics {

namespace {

namespace sp = dnls::spectral;

// FFT of the nonlinear term N(u) = -|u|^2 dx u + i b |u|^4 u.
std::vector<cplx> nonlinear_hat(const Grid& g, const Params& p,
                                const std::vector<cplx>& uhat, bool dealias) {
  std::vector<cplx> dhat = uhat;
  sp::apply_derivative(g, dhat, 1);
  const std::vector<cplx> u = sp::ifft(g, uhat);
  const std::vector<cplx> du = sp::ifft(g, dhat);
  std::vector<cplx> nl(u.size());
  for (size_t j = 0; j < u.size(); ++j) {
    const double a2 = std::norm(u[j]);
    nl[j] = -a2 * du[j] + cplx(0.0, p.b) * a2 * a2 * u[j];
  }
  std::vector<cplx> nhat = sp::fft(g, nl);
  if (dealias) sp::dealias_23(g, nhat);
  return nhat;
}

double hat_norm(const std::vector<cplx>& hat) {
  double acc = 0.0;
  for (const cplx& z : hat) acc += std::norm(z);
  return std::sqrt(acc);
}

struct LawsonRk4 {
  const Grid& g;
  const Params& p;
  bool dealias;
  double dt;
  std::vector<cplx> e_half, e_full;  // exp(-i k^2 dt/2) and its square

  LawsonRk4(const Grid& g_, const Params& p_, bool dealias_, double dt_)
      : g(g_), p(p_), dealias(dealias_), dt(dt_),
        e_half(static_cast<size_t>(g_.n)), e_full(static_cast<size_t>(g_.n)) {
    for (int k = 0; k < g.n; ++k) {
      const double kk = g.wavenumber(k);
      e_half[static_cast<size_t>(k)] = std::polar(1.0, -kk * kk * dt / 2.0);
      e_full[static_cast<size_t>(k)] =
          e_half[static_cast<size_t>(k)] * e_half[static_cast<size_t>(k)];
    }
  }

  void step(std::vector<cplx>& uhat) const {
    const size_t n = uhat.size();
    const std::vector<cplx> n1 = nonlinear_hat(g, p, uhat, dealias);

    std::vector<cplx> stage(n);
    for (size_t j = 0; j < n; ++j)
      stage[j] = e_half[j] * (uhat[j] + 0.5 * dt * n1[j]);
    const std::vector<cplx> n2 = nonlinear_hat(g, p, stage, dealias);

    for (size_t j = 0; j < n; ++j)
      stage[j] = e_half[j] * uhat[j] + 0.5 * dt * n2[j];
    const std::vector<cplx> n3 = nonlinear_hat(g, p, stage, dealias);

    for (size_t j = 0; j < n; ++j)
      stage[j] = e_full[j] * uhat[j] + dt * e_half[j] * n3[j];
    const std::vector<cplx> n4 = nonlinear_hat(g, p, stage, dealias);

    for (size_t j = 0; j < n; ++j)
      uhat[j] = e_full[j] * uhat[j] +
                dt / 6.0 *
                    (e_full[j] * n1[j] + 2.0 * e_half[j] * (n2[j] + n3[j]) +
                     n4[j]);
  }
};

struct ImplicitMidpoint {
  const Grid& g;
  const Params& p;
  bool dealias;
  double dt;
  std::vector<cplx> resolvent;  // 1 / (1 + i k^2 dt/2)

  ImplicitMidpoint(const Grid& g_, const Params& p_, bool dealias_, double dt_)
      : g(g_), p(p_), dealias(dealias_), dt(dt_),
        resolvent(static_cast<size_t>(g_.n)) {
    for (int k = 0; k < g.n; ++k) {
      const double kk = g.wavenumber(k);
      resolvent[static_cast<size_t>(k)] =
          1.0 / cplx(1.0, kk * kk * dt / 2.0);
    }
  }

  // Fixed-point iteration on the midpoint state; the stiff linear part is
  // folded into the resolvent so only the nonlinearity is iterated.
  void step(std::vector<cplx>& uhat) const {
    const size_t n = uhat.size();
    std::vector<cplx> mid = uhat;
    std::vector<cplx> next(n);
    const double scale = std::max(hat_norm(uhat), 1e-300);
    for (int it = 0; it < 100; ++it) {
      const std::vector<cplx> nl = nonlinear_hat(g, p, mid, dealias);
      for (size_t j = 0; j < n; ++j)
        next[j] = resolvent[j] * (uhat[j] + 0.5 * dt * nl[j]);
      double diff = 0.0;
      for (size_t j = 0; j < n; ++j) diff += std::norm(next[j] - mid[j]);
      mid.swap(next);
      if (std::sqrt(diff) <= 1e-12 * scale) {
        for (size_t j = 0; j < n; ++j) uhat[j] = 2.0 * mid[j] - uhat[j];
        return;
      }
    }
    throw NoConvergence("implicit midpoint iteration did not converge");
  }
};

double relative_drift(double x, double x0) {
  return std::fabs(x - x0) / std::max(1.0, std::fabs(x0));
}

}  // namespace

Field rhs(const Field& u, const Params& p) {
  std::vector<cplx> uhat = sp::fft(u);
  std::vector<cplx> lin = uhat;
  sp::apply_derivative(u.grid, lin, 2);
  const std::vector<cplx> nl = nonlinear_hat(u.grid, p, uhat, false);
  for (size_t j = 0; j < lin.size(); ++j)
    lin[j] = cplx(0.0, 1.0) * lin[j] + nl[j];
  return sp::field_from_hat(u.grid, lin);
}

double default_dt(const Field& u0) {
  double peak = 0.0;
  for (const cplx& z : u0.v) peak = std::max(peak, std::abs(z));
  const double h = u0.grid.spacing();
  const double kmax = M_PI / h;
  return std::min(0.25 * h / std::max(1.0, peak * peak), 0.5 / kmax);
}

namespace {

// One pass at fixed dt; returns false when the drift gate tripped (so the
// caller may halve dt and retry).
bool run_once(const Field& u0, const EvolutionConfig& cfg, const Params& p,
              const Monitor& monitor, double dt, Trajectory& out) {
  const Grid& g = u0.grid;
  const std::size_t steps =
      static_cast<std::size_t>(std::ceil(cfg.t_end / std::fabs(dt) - 1e-12));
  const double dt_exact =
      std::copysign(cfg.t_end / static_cast<double>(steps), dt);

  const LawsonRk4 rk(g, p, cfg.dealias, dt_exact);
  const ImplicitMidpoint im(g, p, cfg.dealias, dt_exact);

  out = Trajectory{};
  out.dt_used = dt_exact;

  const std::size_t monitors_expected =
      steps / static_cast<std::size_t>(cfg.monitor_every) + 2;
  const std::size_t snap_stride = std::max<std::size_t>(
      1, monitors_expected / static_cast<std::size_t>(
                                 std::max(1, cfg.max_snapshots - 1)));

  std::vector<cplx> uhat = sp::fft(u0);

  double e0 = 0.0, q00 = 0.0, q10 = 0.0, h10 = 0.0;
  std::size_t monitor_index = 0;

  auto do_monitor = [&](double t, std::size_t step) -> bool {
    const Field u = sp::field_from_hat(g, uhat);
    MonitorSample s;
    s.t = t;
    s.step = step;
    s.energy = functionals::energy(u, p);
    s.q0 = functionals::charge0(u);
    s.q1 = functionals::charge1(u);
    s.h1norm = functionals::norm_h1(u);
    if (step == 0) {
      e0 = s.energy; q00 = s.q0; q10 = s.q1; h10 = s.h1norm;
    } else {
      if (!std::isfinite(s.h1norm) || s.h1norm > 1e3 * h10)
        throw BlowupSuspected("H1 norm grew beyond 1000x the initial value");
      const double drift = std::max(
          {relative_drift(s.energy, e0), relative_drift(s.q0, q00),
           relative_drift(s.q1, q10)});
      if (drift > cfg.drift_tolerance) return false;  // gate tripped
    }
    out.times.push_back(s.t);
    out.energy.push_back(s.energy);
    out.q0.push_back(s.q0);
    out.q1.push_back(s.q1);
    out.h1norm.push_back(s.h1norm);
    if (monitor_index % snap_stride == 0) out.snapshots.emplace_back(s.t, u);
    ++monitor_index;
    if (monitor && !monitor(s, u)) {
      out.stopped_early = true;
      return true;
    }
    return true;
  };

  if (!do_monitor(0.0, 0)) return false;
  if (out.stopped_early) return true;

  for (std::size_t step = 1; step <= steps; ++step) {
    if (cfg.scheme == Scheme::IntegratingFactorRK4)
      rk.step(uhat);
    else
      im.step(uhat);

    const bool at_monitor = (step % static_cast<std::size_t>(
                                        cfg.monitor_every) == 0) ||
                            step == steps;
    if (!at_monitor) continue;
    const double t = static_cast<double>(step) * dt_exact;
    if (!do_monitor(t, step)) return false;
    if (out.stopped_early) break;
  }

  // keep the final state among the snapshots
  if (!out.times.empty() &&
      (out.snapshots.empty() || out.snapshots.back().first != out.times.back()))
    out.snapshots.emplace_back(out.times.back(),
                               sp::field_from_hat(g, uhat));
  return true;
}

}  // namespace

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const Params& p,
                  const Monitor& monitor) {
  if (!(cfg.t_end > 0.0)) throw InvalidArgument("t_end must be positive");
  if (cfg.monitor_every < 1)
    throw InvalidArgument("monitor_every must be at least 1");
  if (!u0.finite()) throw InvalidArgument("initial data contains NaN/Inf");

  {
    // with dealiasing the tail is everything the 2/3 rule removes; otherwise
    // the top octave below the Nyquist mode
    const std::vector<cplx> hat = sp::fft(u0);
    const int band_start = cfg.dealias ? u0.grid.n / 3
                                       : u0.grid.n / 2 - u0.grid.n / 16;
    if (sp::tail_fraction(u0.grid, hat, band_start) > 1e-10)
      throw UnresolvedInput("spectral tail of initial data exceeds 1e-10");
  }

  // dt < 0 integrates backward in time over [0, -t_end]
  double dt = cfg.dt != 0.0 ? cfg.dt : default_dt(u0);
  const int attempts = cfg.dt != 0.0 ? 1 : cfg.max_dt_halvings + 1;

  Trajectory out;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (run_once(u0, cfg, p, monitor, dt, out)) return out;
    dt *= 0.5;
  }
  throw DriftExceeded("conserved-quantity drift exceeded tolerance");
}

std::vector<std::pair<double, double>> soliton_transport_error(
    const Omega& omega, const Params& p, const EvolutionConfig& cfg,
    const Grid& g) {
  const Field phi = waves::profile(omega, p, g);
  std::vector<std::pair<double, double>> series;
  auto monitor = [&](const MonitorSample& s, const Field& u) {
    if (s.step == 0) series.clear();  // dt-halving restart
    const Field exact = functionals::translate(
        functionals::ThetaPair(omega.omega0 * s.t, omega.omega1 * s.t), phi);
    series.emplace_back(s.t, functionals::norm_h1(u - exact));
    return true;
  };
  evolve(phi, cfg, p, monitor);
  return series;
}

}  // namespace dnls::dynamics
