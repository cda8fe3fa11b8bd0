#pragma once

// Array kernels used by the sensing pipeline and trace analysis.
//
// Each kernel has a scalar reference and an AVX2 variant; the variant is picked once at
// startup from CPUID and can be pinned with force_isa() (tests use this to compare them).
// Elementwise and max kernels give bit-identical results on every ISA. The summation
// kernels are compensated, so ISAs agree to within a few ulps of the exact sum.

#include <span>
#include <string_view>

namespace prouter::kernels {

enum class Isa { kScalar, kAvx2 };

Isa active_isa() noexcept;
bool isa_supported(Isa isa) noexcept;
/// Throws std::invalid_argument if the CPU cannot run `isa`.
void force_isa(Isa isa);
/// Back to the CPUID choice.
void reset_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Compensated (Neumaier) sum.
double sum(std::span<const double> x) noexcept;
/// out[k] = a[k] * b[k]; all three spans must have the same length.
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// max |x[k]|, 0 for an empty span.
double max_abs(std::span<const double> x) noexcept;
/// max |a[k] - b[k]|; spans must have the same length.
double max_abs_diff(std::span<const double> a, std::span<const double> b);
/// Trapezoidal integral of uniformly spaced samples.
double trapezoid(std::span<const double> y, double dt) noexcept;

struct KernelTable {
  double (*sum)(std::span<const double>) noexcept;
  void (*multiply)(const double*, const double*, double*, std::size_t) noexcept;
  double (*max_abs)(std::span<const double>) noexcept;
  double (*max_abs_diff)(const double*, const double*, std::size_t) noexcept;
};

const KernelTable& table_for(Isa isa);

}  // namespace prouter::kernels
