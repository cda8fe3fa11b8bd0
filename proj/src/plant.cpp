#include "prouter/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prouter {

double grid_angle(const GridSource& g, double t) noexcept {
  return 2.0 * std::numbers::pi * g.f_line * t + g.phase;
}

double grid_voltage(const GridSource& g, double t) noexcept {
  return std::numbers::sqrt2 * g.vrms * std::sin(grid_angle(g, t));
}

BatteryState battery_step(BatteryState b, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("battery_step: dt must be positive");

  const double energy_ws = b.capacity_wh * 3600.0;
  b.soc = std::clamp(b.soc + b.p_act * dt / energy_ws, 0.0, 1.0);

  double target = b.p_ref;
  if (b.lag_tau > 0.0) {
    b.lagged_ref += (b.p_ref - b.lagged_ref) * -std::expm1(-dt / b.lag_tau);
    target = b.lagged_ref;
  } else {
    b.lagged_ref = b.p_ref;
  }

  const double max_delta = b.slew * dt;
  double next = b.p_act + std::clamp(target - b.p_act, -max_delta, max_delta);

  // Saturation: full or empty battery overrides the slew limit.
  next = std::clamp(next, -b.soc * energy_ws / dt, (1.0 - b.soc) * energy_ws / dt);
  b.p_act = next;
  return b;
}

double battery_current(const BatteryState& b, const GridSource& g, double t) noexcept {
  return -std::numbers::sqrt2 * (b.p_act / g.vrms) * std::sin(grid_angle(g, t));
}

PortFlows port_flows(const Partition& partition, std::span<const HouseNet> houses,
                     PortId battery_port, const BatteryState& battery, const GridSource& g,
                     double t) {
  PortFlows flows;
  const double v = grid_voltage(g, t);
  for (auto& f : flows) f.v = v;

  const auto peer = connected_peer(partition, battery_port);
  if (!peer) return flows;
  const bool peer_is_house = std::any_of(houses.begin(), houses.end(),
                                         [&](const HouseNet& h) { return h.port == *peer; });
  if (!peer_is_house) return flows;

  const double i = battery_current(battery, g, t);
  flows[battery_port.slot()].i = i;
  flows[peer->slot()].i = -i;
  return flows;
}

}  // namespace prouter
