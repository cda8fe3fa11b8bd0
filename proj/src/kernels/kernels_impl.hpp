#pragma once

#include <cstddef>
#include <span>

namespace prouter::kernels {

namespace scalar {
double sum(std::span<const double> x) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept;
double max_abs(std::span<const double> x) noexcept;
double max_abs_diff(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

#if defined(PROUTER_HAVE_AVX2)
namespace avx2 {
double sum(std::span<const double> x) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t n) noexcept;
double max_abs(std::span<const double> x) noexcept;
double max_abs_diff(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2
#endif

// Neumaier step: s + c tracks the running sum exactly to second order.
inline void neumaier_add(double& s, double& c, double x) noexcept {
  const double t = s + x;
  if ((s < 0 ? -s : s) >= (x < 0 ? -x : x)) {
    c += (s - t) + x;
  } else {
    c += (x - t) + s;
  }
  s = t;
}

}  // namespace prouter::kernels
