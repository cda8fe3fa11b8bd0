#pragma once

// Electrical models around the router: stiff grid-emulating source shared by the houses,
// and a grid-synchronized battery/PCS whose real power is slew-limited toward its reference.

#include <array>
#include <span>

#include "prouter/matrix.hpp"

namespace prouter {

struct GridSource {
  double vrms = 200.0;   // V
  double f_line = 60.0;  // Hz
  double phase = 0.0;    // rad
};

/// 2*pi*f*t + phase.
double grid_angle(const GridSource& g, double t) noexcept;
/// sqrt(2) * Vrms * sin(2*pi*f*t + phase).
double grid_voltage(const GridSource& g, double t) noexcept;

/// Battery + PCS. Positive power means charging.
struct BatteryState {
  double p_ref = 0.0;          // W
  double p_act = 0.0;          // W
  double slew = 720.0;         // W/s
  double capacity_wh = 6500.0;
  double soc = 0.5;            // fraction
  double lag_tau = 0.0;        // s; first-order lag ahead of the slew limiter, 0 disables it
  double lagged_ref = 0.0;     // W; lag filter state
};

/// Advance by dt: SoC absorbs p_act over the elapsed step, then p_act moves toward the
/// (optionally lagged) reference by at most slew*dt and is clamped so the next step cannot
/// push SoC outside [0, 1]. Throws std::invalid_argument unless dt > 0.
BatteryState battery_step(BatteryState b, double dt);

/// Current at the battery's router port, positive into the router. Unity power factor and
/// synchronized to the grid, so a charging battery (p_act > 0) averages -p_act at its port.
double battery_current(const BatteryState& b, const GridSource& g, double t) noexcept;

/// House-side bookkeeping: net surplus (positive) or deficit exported toward the router.
/// Houses share the stiff grid source, so this does not change the circuit solution.
struct HouseNet {
  PortId port;
  double net_injection = 0.0;  // W
};

struct PortFlow {
  double v = 0.0;
  double i = 0.0;
};
using PortFlows = std::array<PortFlow, kPortCount>;

/// Voltage and current at every port. All ports sit on the grid voltage; battery current
/// flows only when its block pairs it with a house port, which carries the opposite
/// current. Throws MultiConnectionError if the battery's block holds more than two ports.
PortFlows port_flows(const Partition& partition, std::span<const HouseNet> houses,
                     PortId battery_port, const BatteryState& battery, const GridSource& g,
                     double t);

}  // namespace prouter
