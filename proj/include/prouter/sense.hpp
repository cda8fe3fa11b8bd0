#pragma once

// Per-port sensing: instantaneous power, integer-period moving average, zero detection.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace prouter {

struct PortSample {
  double t = 0.0;  // s
  double v = 0.0;  // V
  double i = 0.0;  // A, positive into the router
};

/// Positive means power flowing into the router through the port.
constexpr double inst_power(const PortSample& s) noexcept { return s.v * s.i; }

/// Elementwise v*i over whole waveforms (SIMD-dispatched).
void inst_power_batch(std::span<const double> v, std::span<const double> i,
                      std::span<double> out);

/// Samples per averaging window: periods * fs / f_line. Throws ConfigError unless that is
/// a positive integer (to within 1e-9).
std::size_t window_samples(double fs, double f_line, int periods);

/// Simple moving average of the last n instantaneous powers.
///
/// The running sum is Neumaier-compensated and rebuilt from the ring buffer every n
/// updates, so its error stays at a few ulps of the window sum regardless of run length.
class PowerAverager {
 public:
  /// Throws ConfigError when n == 0.
  explicit PowerAverager(std::size_t n);

  /// Push one sample; returns the mean of the last n samples, or nullopt until n have arrived.
  std::optional<double> update(double p) noexcept;

  std::optional<double> average() const noexcept;
  bool ready() const noexcept { return seen_ >= buffer_.size(); }
  std::size_t size() const noexcept { return buffer_.size(); }
  std::size_t samples_seen() const noexcept { return seen_; }

 private:
  void resum() noexcept;

  std::vector<double> buffer_;
  std::size_t head_ = 0;
  std::size_t seen_ = 0;
  std::size_t since_resum_ = 0;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Functional form of PowerAverager::update.
struct AveragerUpdate {
  PowerAverager averager;
  std::optional<double> average;
};
AveragerUpdate ma_update(PowerAverager averager, double p);

/// Fires when the averaged power is inside (-epsilon, epsilon) and the detector is armed.
class ZeroDetector {
 public:
  /// Throws ConfigError unless epsilon > 0.
  explicit ZeroDetector(double epsilon, bool armed = false);

  double epsilon() const noexcept { return epsilon_; }
  bool armed() const noexcept { return armed_; }
  void arm() noexcept { armed_ = true; }
  void disarm() noexcept { armed_ = false; }

  bool fires(double average) const noexcept;

 private:
  double epsilon_;
  bool armed_;
};

inline bool zero_detect(const ZeroDetector& d, double average) noexcept {
  return d.fires(average);
}

}  // namespace prouter
