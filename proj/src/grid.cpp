#include "dnls/grid.hpp"

#include <cmath>

namespace dnls {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(double L, int n_nodes) : half_length(L), n(n_nodes) {
  if (!(L > 0.0)) throw InvalidArgument("grid half-length must be positive");
  if (!is_pow2(n_nodes) || n_nodes < 256)
    throw InvalidArgument("grid size must be a power of two >= 256");
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = node(j);
  return x;
}

double Grid::wavenumber(int k) const {
  const int m = (k <= n / 2) ? k : k - n;
  return M_PI / half_length * m;
}

Field::Field(const Grid& g, std::vector<cplx> values)
    : grid(g), v(std::move(values)) {
  if (static_cast<int>(v.size()) != g.n)
    throw InvalidArgument("field sample count does not match grid");
}

bool Field::finite() const {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("fields live on different grids");
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field r(a.grid);
  for (size_t j = 0; j < r.v.size(); ++j) r.v[j] = a.v[j] + b.v[j];
  return r;
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field r(a.grid);
  for (size_t j = 0; j < r.v.size(); ++j) r.v[j] = a.v[j] - b.v[j];
  return r;
}

Field operator*(cplx s, const Field& a) {
  Field r(a.grid);
  for (size_t j = 0; j < r.v.size(); ++j) r.v[j] = s * a.v[j];
  return r;
}

Field& axpy(Field& y, cplx a, const Field& x) {
  require_same_grid(y, x);
  for (size_t j = 0; j < y.v.size(); ++j) y.v[j] += a * x.v[j];
  return y;
}

}  // namespace dnls
