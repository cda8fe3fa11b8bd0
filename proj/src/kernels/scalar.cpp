#include <cmath>

#include "kernels_impl.hpp"

namespace prouter::kernels::scalar {

double sum(std::span<const double> x) noexcept {
  double s = 0.0;
  double c = 0.0;
  for (double v : x) neumaier_add(s, c, v);
  return s + c;
}

void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

double max_abs(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::fmax(m, std::fabs(v));
  return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) noexcept {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::fmax(m, std::fabs(a[k] - b[k]));
  return m;
}

}  // namespace prouter::kernels::scalar
