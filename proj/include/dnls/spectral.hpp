#pragma once

#include <span>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls::spectral {

// Unnormalized forward DFT; inverse carries the 1/n factor.
std::vector<cplx> fft(const Grid& g, std::span<const cplx> in);
std::vector<cplx> ifft(const Grid& g, std::span<const cplx> in);

std::vector<cplx> fft(const Field& f);
Field field_from_hat(const Grid& g, std::span<const cplx> hat);

/// Multiply spectrum by (ik)^p in place. Odd powers zero the Nyquist mode.
void apply_derivative(const Grid& g, std::vector<cplx>& hat, int power = 1);

/// Multiply spectrum by exp(-ik*dx) in place (translation x -> x - dx).
void apply_shift(const Grid& g, std::vector<cplx>& hat, double dx);

/// Zero all modes with |m| > n/3 (2/3 rule).
void dealias_23(const Grid& g, std::vector<cplx>& hat);

Field derivative(const Field& f, int power = 1);

/// Evaluate the trigonometric interpolant of `hat` at an arbitrary point x.
cplx evaluate_interpolant(const Grid& g, std::span<const cplx> hat, double x);

/// Largest |hat| over modes with |m| >= band_start relative to the overall
/// peak; used to decide whether data is spectrally resolved.
double tail_fraction(const Grid& g, std::span<const cplx> hat, int band_start);

/// Periodic antiderivative data for a real function sampled on the grid:
/// integral from -L to x splits into mean*(x+L) + (G(x) - G(-L)) with G
/// periodic.  G is returned at the nodes along with its spectrum so the
/// integral can also be evaluated off the nodes.
struct Antiderivative {
  double mean = 0.0;
  std::vector<double> g_nodes;
  std::vector<cplx> g_hat;

  double integral_to_node(const Grid& g, int j) const;
  double integral_to(const Grid& g, double x) const;
};

Antiderivative antiderivative(const Grid& g, std::span<const double> f);

}  // namespace dnls::spectral
