#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/params.hpp"

namespace dnls::dynamics {

enum class Scheme { IntegratingFactorRK4, ImplicitMidpoint };

struct EvolutionConfig {
  double dt = 0.0;     // 0 selects the CFL-based default with auto-halving
  double t_end = 1.0;
  Scheme scheme = Scheme::IntegratingFactorRK4;
  bool dealias = true;
  int monitor_every = 10;
  double drift_tolerance = 1e-7;
  int max_dt_halvings = 6;
  int max_snapshots = 33;
};

struct MonitorSample {
  double t = 0.0;
  std::size_t step = 0;
  double energy = 0.0;
  double q0 = 0.0;
  double q1 = 0.0;
  double h1norm = 0.0;
};

/// Called at every monitor time with the current state; return false to stop
/// the run early.  On a dt-halving restart the series is rebuilt from t = 0,
/// so observers should reset any accumulated state when they see step == 0.
using Monitor = std::function<bool(const MonitorSample&, const Field&)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<double> energy, q0, q1, h1norm;
  std::vector<std::pair<double, Field>> snapshots;
  double dt_used = 0.0;
  bool stopped_early = false;
};

/// Right-hand side of the evolution equation solved for du/dt:
/// du/dt = i dxx u - |u|^2 dx u + i b |u|^4 u  (= -i E'(u)).
Field rhs(const Field& u, const Params& p);

/// Advection-limited default step: min(0.25 h / max(1, peak^2), 0.5 / k_max).
double default_dt(const Field& u0);

/// Integrate from u0 to t_end recording conserved-quantity series at monitor
/// times.  Throws UnresolvedInput, BlowupSuspected, DriftExceeded,
/// NoConvergence (implicit midpoint iteration).
Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const Params& p,
                  const Monitor& monitor = {});

/// H1 distance between the numerical solution started from phi_omega and the
/// transported exact wave T(omega t) phi_omega, at the monitor times.
std::vector<std::pair<double, double>> soliton_transport_error(
    const Omega& omega, const Params& p, const EvolutionConfig& cfg,
    const Grid& g);

}  // namespace dnls::dynamics
