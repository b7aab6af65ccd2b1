#include "dnls/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace dnls::spectral {

namespace {

struct Plans {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

// Plan creation is not thread-safe in FFTW; execution on private buffers is.
Plans& plans_for(int n) {
  thread_local std::map<int, std::unique_ptr<Plans>> cache;
  auto& slot = cache[n];
  if (!slot) {
    static std::mutex planner_mutex;
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto p = std::make_unique<Plans>();
    p->n = n;
    p->buf = fftw_alloc_complex(static_cast<size_t>(n));
    p->fwd = fftw_plan_dft_1d(n, p->buf, p->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p->bwd = fftw_plan_dft_1d(n, p->buf, p->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    slot = std::move(p);
  }
  return *slot;
}

std::vector<cplx> run(const Grid& g, std::span<const cplx> in, bool forward) {
  Plans& p = plans_for(g.n);
  // std::complex<double> is layout-compatible with fftw_complex
  cplx* buf = reinterpret_cast<cplx*>(p.buf);
  std::copy(in.begin(), in.end(), buf);
  fftw_execute(forward ? p.fwd : p.bwd);
  std::vector<cplx> out(buf, buf + in.size());
  if (!forward) {
    const double s = 1.0 / g.n;
    for (cplx& z : out) z *= s;
  }
  return out;
}

}  // namespace

std::vector<cplx> fft(const Grid& g, std::span<const cplx> in) {
  return run(g, in, true);
}

std::vector<cplx> ifft(const Grid& g, std::span<const cplx> in) {
  return run(g, in, false);
}

std::vector<cplx> fft(const Field& f) { return run(f.grid, f.v, true); }

Field field_from_hat(const Grid& g, std::span<const cplx> hat) {
  return Field(g, ifft(g, hat));
}

void apply_derivative(const Grid& g, std::vector<cplx>& hat, int power) {
  for (int k = 0; k < g.n; ++k) {
    const double kk = g.wavenumber(k);
    cplx factor;
    switch (power) {
      case 1: factor = cplx(0.0, kk); break;
      case 2: factor = -kk * kk; break;
      default: factor = std::pow(cplx(0.0, kk), power); break;
    }
    hat[static_cast<size_t>(k)] *= factor;
  }
  if (power % 2 != 0) hat[static_cast<size_t>(g.n / 2)] = 0.0;
}

void apply_shift(const Grid& g, std::vector<cplx>& hat, double dx) {
  for (int k = 0; k < g.n; ++k) {
    const double kk = g.wavenumber(k);
    hat[static_cast<size_t>(k)] *= std::polar(1.0, -kk * dx);
  }
}

void dealias_23(const Grid& g, std::vector<cplx>& hat) {
  const int keep = g.n / 3;
  for (int k = 0; k < g.n; ++k) {
    const int m = (k <= g.n / 2) ? k : k - g.n;
    if (std::abs(m) > keep) hat[static_cast<size_t>(k)] = 0.0;
  }
}

Field derivative(const Field& f, int power) {
  std::vector<cplx> hat = fft(f);
  apply_derivative(f.grid, hat, power);
  return field_from_hat(f.grid, hat);
}

cplx evaluate_interpolant(const Grid& g, std::span<const cplx> hat, double x) {
  // hat_k multiplies exp(i*k_k*(x + L)) / n.
  cplx acc = 0.0;
  const double xoff = x + g.half_length;
  for (int k = 0; k < g.n; ++k) {
    acc += hat[static_cast<size_t>(k)] * std::polar(1.0, g.wavenumber(k) * xoff);
  }
  return acc / static_cast<double>(g.n);
}

double tail_fraction(const Grid& g, std::span<const cplx> hat, int band_start) {
  double peak = 0.0, tail = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const int m = (k <= g.n / 2) ? k : k - g.n;
    const double a = std::abs(hat[static_cast<size_t>(k)]);
    peak = std::max(peak, a);
    if (std::abs(m) >= band_start) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

double Antiderivative::integral_to_node(const Grid& g, int j) const {
  return mean * (g.node(j) + g.half_length) + g_nodes[static_cast<size_t>(j)] -
         g_nodes[0];
}

double Antiderivative::integral_to(const Grid& g, double x) const {
  const cplx gx = evaluate_interpolant(g, g_hat, x);
  return mean * (x + g.half_length) + gx.real() - g_nodes[0];
}

Antiderivative antiderivative(const Grid& g, std::span<const double> f) {
  std::vector<cplx> hat(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j) hat[static_cast<size_t>(j)] = f[static_cast<size_t>(j)];
  hat = fft(g, hat);

  Antiderivative a;
  a.mean = hat[0].real() / g.n;
  a.g_hat.assign(static_cast<size_t>(g.n), 0.0);
  for (int k = 1; k < g.n; ++k) {
    if (k == g.n / 2) continue;  // Nyquist has no odd-derivative inverse
    a.g_hat[static_cast<size_t>(k)] =
        hat[static_cast<size_t>(k)] / cplx(0.0, g.wavenumber(k));
  }
  std::vector<cplx> gn = ifft(g, a.g_hat);
  a.g_nodes.resize(static_cast<size_t>(g.n));
  for (int j = 0; j < g.n; ++j)
    a.g_nodes[static_cast<size_t>(j)] = gn[static_cast<size_t>(j)].real();
  return a;
}

}  // namespace dnls::spectral
