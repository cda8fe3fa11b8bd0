#include "prouter/sense.hpp"

#include <cmath>
#include <string>

#include "kernels/kernels_impl.hpp"
#include "prouter/errors.hpp"
#include "prouter/kernels.hpp"

namespace prouter {

void inst_power_batch(std::span<const double> v, std::span<const double> i,
                      std::span<double> out) {
  kernels::multiply(v, i, out);
}

std::size_t window_samples(double fs, double f_line, int periods) {
  if (!(fs > 0.0) || !(f_line > 0.0)) throw ConfigError("fs and f_line must be positive");
  if (periods < 1) throw ConfigError("averaging window must span at least one period");
  const double per_period = fs / f_line;
  const double rounded = std::round(per_period);
  if (rounded < 1.0 || std::fabs(per_period - rounded) > 1e-9 * per_period) {
    throw ConfigError("fs/f_line = " + std::to_string(per_period) +
                      " is not an integer number of samples per period");
  }
  return static_cast<std::size_t>(rounded) * static_cast<std::size_t>(periods);
}

PowerAverager::PowerAverager(std::size_t n) : buffer_(n, 0.0) {
  if (n == 0) throw ConfigError("averaging window must hold at least one sample");
}

std::optional<double> PowerAverager::update(double p) noexcept {
  const double evicted = buffer_[head_];
  buffer_[head_] = p;
  head_ = (head_ + 1 == buffer_.size()) ? 0 : head_ + 1;
  ++seen_;

  if (++since_resum_ >= buffer_.size()) {
    resum();
  } else {
    kernels::neumaier_add(sum_, comp_, p);
    kernels::neumaier_add(sum_, comp_, -evicted);
  }
  return average();
}

std::optional<double> PowerAverager::average() const noexcept {
  if (!ready()) return std::nullopt;
  return (sum_ + comp_) / static_cast<double>(buffer_.size());
}

void PowerAverager::resum() noexcept {
  // Slots not yet written are zero, so summing the whole buffer is right before it fills.
  sum_ = kernels::sum(buffer_);
  comp_ = 0.0;
  since_resum_ = 0;
}

AveragerUpdate ma_update(PowerAverager averager, double p) {
  auto avg = averager.update(p);
  return {std::move(averager), avg};
}

ZeroDetector::ZeroDetector(double epsilon, bool armed) : epsilon_(epsilon), armed_(armed) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("zero-detection threshold must be a positive finite power");
  }
}

bool ZeroDetector::fires(double average) const noexcept {
  return armed_ && std::fabs(average) < epsilon_;
}

}  // namespace prouter
