#include <cassert>

#include "cellricci/kernels.hpp"

namespace cellricci::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void rotate_rows(std::span<double> x, std::span<double> y, double c, double s) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void matvec(std::span<const double> a, std::size_t n, std::span<const double> x, std::span<double> y) {
  assert(a.size() == n * n && x.size() == n && y.size() == n);
  for (std::size_t i = 0; i < n; ++i) y[i] = dot(a.subspan(i * n, n), x);
}

}  // namespace cellricci::kernels::scalar
