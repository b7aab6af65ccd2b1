#include "dnls/waves.hpp"

#include <cmath>

#include "dnls/rootfind.hpp"

namespace dnls::waves {

double gamma_of(double b) {
  if (!(b >= 0.0)) throw InvalidParams("coupling b must satisfy b >= 0");
  return 1.0 + 16.0 * b / 3.0;
}

double tilde_profile(const Omega& omega, const Params& p, double x) {
  const double gap = omega.gap();
  const double root = std::sqrt(omega.omega1 * omega.omega1 + p.gamma * gap);
  const double den = -omega.omega1 + root * std::cosh(std::sqrt(gap) * x);
  return std::sqrt(2.0 * gap / den);
}

MassIntegral::MassIntegral(const Omega& omega, const Params& p, const Grid& g)
    : grid_(g) {
  const double gap = omega.gap();
  decay_ = std::sqrt(gap);
  const double root = std::sqrt(omega.omega1 * omega.omega1 + p.gamma * gap);
  // phi~^2(x) ~ (4*gap/root) exp(-decay*|x|) far from the hump
  tail_coeff_ = 4.0 * decay_ / root;
  left_tail_ = tail_coeff_ * std::exp(-decay_ * g.half_length);

  std::vector<double> f(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) {
    const double t = tilde_profile(omega, p, g.node(j));
    f[static_cast<size_t>(j)] = t * t;
  }
  anti_ = spectral::antiderivative(g, f);
}

double MassIntegral::at_node(int j) const {
  return left_tail_ + anti_.integral_to_node(grid_, j);
}

double MassIntegral::total() const {
  // the grid covers [-L, L); the missing right tail matches the left one
  return left_tail_ + anti_.mean * 2.0 * grid_.half_length + left_tail_;
}

double MassIntegral::operator()(double x) const {
  const double L = grid_.half_length;
  if (x <= -L) return tail_coeff_ * std::exp(decay_ * x);
  if (x >= L) return total() - tail_coeff_ * std::exp(-decay_ * x);
  return left_tail_ + anti_.integral_to(grid_, x);
}

double phase(const Omega& omega, const Params& p, double x) {
  MassIntegral m(omega, p, default_grid(omega));
  return 0.5 * omega.omega1 * x - 0.25 * m(x);
}

Grid default_grid(const Omega& omega, int n) {
  return Grid(60.0 / std::sqrt(omega.gap()), n);
}

Field profile(const Omega& omega, const Params& p, const Grid& g) {
  const double boundary = tilde_profile(omega, p, g.half_length);
  const double peak = tilde_profile(omega, p, 0.0);
  if (boundary > 1e-12 * peak)
    throw GridTooShort("wave tail at the boundary exceeds 1e-12 of the peak");

  MassIntegral m(omega, p, g);
  Field phi(g);
  for (int j = 0; j < g.n; ++j) {
    const double x = g.node(j);
    const double amp = tilde_profile(omega, p, x);
    const double theta = 0.5 * omega.omega1 * x - 0.25 * m.at_node(j);
    phi.v[static_cast<size_t>(j)] = std::polar(amp, theta);
  }
  return phi;
}

double g_function(double xi, const Params& p) {
  if (!(xi > 0.0)) throw InvalidArgument("g is defined for xi > 0");
  return 2.0 * (p.gamma - 1.0) / xi *
         std::atan((1.0 + std::sqrt(1.0 + xi * xi)) / xi);
}

double xi_hat(const Params& p) {
  if (p.b <= 0.0) throw NoRoot("g(xi) = 1 has no root when b = 0");
  auto f = [&p](double xi) { return g_function(xi, p) - 1.0; };
  double right = 1.0;
  while (f(right) > 0.0) {
    right *= 2.0;
    if (right > 1e12) throw NoRoot("failed to bracket g(xi) = 1");
  }
  return brent(f, 1e-6, right, 1e-15, 1e-13);
}

double kappa(const Params& p) {
  const double xh = xi_hat(p);
  return 1.0 / std::sqrt(1.0 + xh * xh / p.gamma);
}

namespace {
// arctan argument shared by the Lemma-4 closed forms
double lemma4_atan(const Omega& omega, const Params& p) {
  const double gap = omega.gap();
  const double rg = std::sqrt(p.gamma * gap);
  const double root = std::sqrt(omega.omega1 * omega.omega1 + p.gamma * gap);
  return std::atan((omega.omega1 + root) / rg);
}
}  // namespace

double closed_q0(const Omega& omega, const Params& p) {
  return 4.0 / std::sqrt(p.gamma) * lemma4_atan(omega, p);
}

double closed_q1(const Omega& omega, const Params& p) {
  const double rg = std::sqrt(p.gamma * omega.gap());
  return std::pow(p.gamma, -1.5) *
         (rg - 2.0 * (p.gamma - 1.0) * omega.omega1 * lemma4_atan(omega, p));
}

double closed_det_d2(const Omega& omega, const Params& p) {
  const double gap = omega.gap();
  return -4.0 * closed_q1(omega, p) /
         (std::sqrt(gap) * (omega.omega1 * omega.omega1 + p.gamma * gap));
}

double d2_00_entry(const Omega& omega, const Params& p) {
  const double gap = omega.gap();
  return -4.0 * omega.omega1 /
         (std::sqrt(gap) * (p.gamma * gap + omega.omega1 * omega.omega1));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Borderline: return "Borderline";
  }
  return "?";
}

ClassificationReport classify(const Omega& omega, const Params& p,
                              double tol) {
  ClassificationReport r;
  r.q1_closed = closed_q1(omega, p);
  r.det_d2 = closed_det_d2(omega, p);
  r.d2_00 = d2_00_entry(omega, p);
  if (p.b <= 0.0) {
    r.verdict = Verdict::Stable;
    return r;
  }
  r.kappa = kappa(p);
  const double band = tol * (1.0 + omega.norm());
  if (r.q1_closed > band)
    r.verdict = Verdict::Stable;
  else if (r.q1_closed < -band)
    r.verdict = Verdict::Unstable;
  else
    r.verdict = Verdict::Borderline;
  return r;
}

}  // namespace dnls::waves
