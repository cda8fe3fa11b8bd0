#pragma once

// Per-pair energy attribution. Each routed circuit joins exactly two ports, so every
// watt-hour flowing through it can be booked to one (source, sink) pair.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "prouter/ctrl.hpp"
#include "prouter/matrix.hpp"

namespace prouter {

using PortPair = std::pair<PortId, PortId>;  // (source, sink)

struct LedgerInterval {
  PortId source;
  PortId sink;
  ModeId mode;
  double t_start = 0.0;  // s
  double t_end = 0.0;    // s
  double energy_wh = 0.0;
};

class EnergyLedger {
 public:
  const std::map<PortPair, double>& totals() const noexcept { return totals_; }
  const std::vector<LedgerInterval>& intervals() const noexcept { return intervals_; }
  double total_wh() const noexcept;
  double energy_wh(PortId source, PortId sink) const noexcept;

  /// Books one step of length dt starting at t. For each two-port block whose ports both
  /// have ready averages, the port with the larger averaged inflow is the source and
  /// |its average| * dt is added. Consecutive steps with the same pair and mode extend
  /// one interval. Throws MultiConnectionError for blocks larger than two ports.
  void record(const Partition& partition, const PortAverages& averages, double dt, double t,
              ModeId mode);

 private:
  struct OpenKey {
    PortPair pair;
    ModeId mode;
    friend auto operator<=>(const OpenKey&, const OpenKey&) = default;
  };

  std::map<PortPair, double> totals_;
  std::vector<LedgerInterval> intervals_;
  std::map<OpenKey, std::pair<std::size_t, std::uint64_t>> open_;  // interval index, last step
  std::uint64_t step_ = 0;
};

EnergyLedger ledger_update(EnergyLedger ledger, const Partition& partition,
                           const PortAverages& averages, double dt, double t, ModeId mode);

}  // namespace prouter
