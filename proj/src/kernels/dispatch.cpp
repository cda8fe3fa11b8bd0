#include <atomic>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "prouter/kernels.hpp"

namespace prouter::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::sum, &scalar::multiply, &scalar::max_abs,
                                   &scalar::max_abs_diff};
#if defined(PROUTER_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::sum, &avx2::multiply, &avx2::max_abs,
                                 &avx2::max_abs_diff};
#endif

Isa detect() noexcept {
#if defined(PROUTER_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const KernelTable& active() { return table_for(selected().load(std::memory_order_relaxed)); }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length mismatch " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

}  // namespace

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(PROUTER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) + " not supported here");
  }
  selected().store(isa, std::memory_order_relaxed);
}

void reset_isa() noexcept { selected().store(detect(), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& table_for(Isa isa) {
#if defined(PROUTER_HAVE_AVX2)
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  if (isa != Isa::kScalar) throw std::invalid_argument("ISA not compiled in");
  return kScalarTable;
}

double sum(std::span<const double> x) noexcept { return active().sum(x); }

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  require_same_size(a.size(), b.size(), "multiply");
  require_same_size(a.size(), out.size(), "multiply");
  active().multiply(a.data(), b.data(), out.data(), a.size());
}

double max_abs(std::span<const double> x) noexcept { return active().max_abs(x); }

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "max_abs_diff");
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

double trapezoid(std::span<const double> y, double dt) noexcept {
  if (y.size() < 2) return 0.0;
  return dt * (sum(y) - 0.5 * (y.front() + y.back()));
}

}  // namespace prouter::kernels
