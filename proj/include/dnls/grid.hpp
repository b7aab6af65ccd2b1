#pragma once

#include <complex>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L) with n nodes, x_j = -L + j*h, h = 2L/n.
/// n must be a power of two and at least 256.
struct Grid {
  double half_length = 0.0;
  int n = 0;

  Grid() = default;
  Grid(double L, int n_nodes);

  double spacing() const { return 2.0 * half_length / n; }
  double node(int j) const { return -half_length + j * spacing(); }
  std::vector<double> nodes() const;

  /// Signed spectral wavenumber of DFT bin k (Nyquist mapped to +pi*n/(2L)).
  double wavenumber(int k) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n == b.n && a.half_length == b.half_length;
  }
};

/// Complex samples on a Grid.
struct Field {
  Grid grid;
  std::vector<cplx> v;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), v(static_cast<size_t>(g.n)) {}
  Field(const Grid& g, std::vector<cplx> values);

  int size() const { return grid.n; }
  bool finite() const;
};

void require_same_grid(const Field& a, const Field& b);

// Pointwise arithmetic helpers.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(cplx s, const Field& a);
Field& axpy(Field& y, cplx a, const Field& x);  // y += a*x

}  // namespace dnls
