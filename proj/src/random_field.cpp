#include "dnls/random_field.hpp"

#include <cmath>

#include "dnls/spectral.hpp"

namespace dnls {

std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer applied to a seed/counter combination
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return (mix_u64(seed, counter) >> 11) * 0x1.0p-53;
}

Field random_field(const Grid& g, std::uint64_t seed, std::uint64_t index,
                   double amplitude, double band_fraction) {
  const int band = static_cast<int>(band_fraction * (g.n / 2));
  std::vector<cplx> hat(static_cast<size_t>(g.n), 0.0);
  const std::uint64_t stream = mix_u64(seed, index);
  for (int k = 0; k < g.n; ++k) {
    const int m = (k <= g.n / 2) ? k : k - g.n;
    if (std::abs(m) > band) continue;
    const std::uint64_t ctr =
        2ull * static_cast<std::uint64_t>(static_cast<std::uint32_t>(m));
    const double u1 = uniform01(stream, ctr);
    const double u2 = uniform01(stream, ctr + 1);
    const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
    hat[static_cast<size_t>(k)] =
        cplx(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
  }

  Field f = spectral::field_from_hat(g, hat);
  const double sigma = g.half_length / 6.0;
  double peak = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double x = g.node(j);
    f.v[static_cast<size_t>(j)] *= std::exp(-x * x / (2.0 * sigma * sigma));
    peak = std::max(peak, std::abs(f.v[static_cast<size_t>(j)]));
  }
  if (peak > 0.0) {
    const double s = amplitude / peak;
    for (cplx& z : f.v) z *= s;
  }
  return f;
}

}  // namespace dnls
