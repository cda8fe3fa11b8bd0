#include "prouter/ledger.hpp"

#include <cmath>

#include "prouter/errors.hpp"

namespace prouter {

double EnergyLedger::total_wh() const noexcept {
  double total = 0.0;
  for (const auto& [pair, wh] : totals_) total += wh;
  return total;
}

double EnergyLedger::energy_wh(PortId source, PortId sink) const noexcept {
  auto it = totals_.find({source, sink});
  return it == totals_.end() ? 0.0 : it->second;
}

void EnergyLedger::record(const Partition& partition, const PortAverages& averages, double dt,
                          double t, ModeId mode) {
  ++step_;
  for (const auto& block : partition) {
    if (block.size() == 1) continue;
    if (block.size() > 2) {
      throw MultiConnectionError("ledger cannot attribute block " + to_string({block}));
    }
    const auto& a = averages[block[0].slot()];
    const auto& b = averages[block[1].slot()];
    if (!a.watts || !b.watts) continue;

    const bool a_sources = *a.watts >= *b.watts;
    const PortPair pair = a_sources ? PortPair{block[0], block[1]} : PortPair{block[1], block[0]};
    const double wh = std::fabs(a_sources ? *a.watts : *b.watts) * dt / 3600.0;
    totals_[pair] += wh;

    const OpenKey key{pair, mode};
    auto it = open_.find(key);
    if (it != open_.end() && it->second.second + 1 == step_) {
      auto& iv = intervals_[it->second.first];
      iv.t_end = t + dt;
      iv.energy_wh += wh;
      it->second.second = step_;
    } else {
      intervals_.push_back({pair.first, pair.second, mode, t, t + dt, wh});
      open_[key] = {intervals_.size() - 1, step_};
    }
  }
}

EnergyLedger ledger_update(EnergyLedger ledger, const Partition& partition,
                           const PortAverages& averages, double dt, double t, ModeId mode) {
  ledger.record(partition, averages, dt, t, mode);
  return ledger;
}

}  // namespace prouter
