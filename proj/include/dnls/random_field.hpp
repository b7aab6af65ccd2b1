#pragma once

#include <cstdint>

#include "dnls/grid.hpp"

namespace dnls {

/// Counter-based generator: the value depends only on (seed, counter), so
/// streams are reproducible across platforms and iteration orders.
std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t counter);
double uniform01(std::uint64_t seed, std::uint64_t counter);

/// Gaussian-enveloped band-limited random field.  Modes with |m| up to
/// band_fraction * n/2 get independent complex Gaussian amplitudes drawn from
/// (seed, index); the physical field is damped by exp(-x^2 / (2 sigma^2))
/// with sigma = L/6 and rescaled so its peak modulus equals `amplitude`.
Field random_field(const Grid& g, std::uint64_t seed, std::uint64_t index,
                   double amplitude, double band_fraction = 1.0 / 6.0);

}  // namespace dnls
