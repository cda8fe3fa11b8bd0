#pragma once

// Switching controller: a mode command arms zero detection on one port, and the gate
// pattern for the new mode is applied (break-before-make) at the first sample whose
// averaged power on that port is inside the epsilon band.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prouter/errors.hpp"
#include "prouter/matrix.hpp"
#include "prouter/sense.hpp"

namespace prouter {

struct ModeId {
  int value = 1;

  friend constexpr auto operator<=>(ModeId, ModeId) = default;
};

/// Rejected mode command (unknown target, or target equals the current mode).
class InvalidCommandError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

struct ModeEntry {
  ModeId id;
  std::string label;
  GateStates gates;
};

/// Router mode -> gate states. Every entry covers the whole topology.
class GateLookupTable {
 public:
  GateLookupTable() = default;
  /// Throws ConfigError on duplicate modes or entries that do not match `topology` exactly.
  GateLookupTable(const SwitchTopology& topology, std::vector<ModeEntry> entries);

  bool contains(ModeId id) const;
  /// Throws InvalidCommandError for unknown modes.
  const ModeEntry& entry(ModeId id) const;
  const GateStates& gates(ModeId id) const { return entry(id).gates; }
  const std::vector<ModeEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<ModeEntry> entries_;
};

/// Mode 1: SW1A on (house 1 <-> battery). Mode 2: SW2A on (house 2 <-> battery).
GateLookupTable default_lookup_table();

struct GateStep {
  GateStates gates;
  int samples = 0;  // hold time; 0 on the final step (held until the next change)

  friend bool operator==(const GateStep&, const GateStep&) = default;
};

/// Break-before-make: switches that turn off open first and stay open for dead_time
/// samples before any switch turns on. Throws std::invalid_argument when old == new or
/// dead_time < 0.
std::vector<GateStep> gate_sequence(const GateStates& old_gates, const GateStates& new_gates,
                                    int dead_time);

enum class ControllerPhase { kSteady, kArmed, kSwitching };

std::string_view to_string(ControllerPhase phase) noexcept;

struct ControllerState {
  ModeId current;
  std::optional<ModeId> pending;
  std::optional<PortId> watch_port;
  ControllerPhase phase = ControllerPhase::kSteady;
  ZeroDetector detector{5.0};
  int dead_time = 1;
  // Break-before-make steps still to be emitted, and samples left on the current one.
  std::vector<GateStep> remaining;
  int hold = 0;
};

ControllerState make_controller(ModeId initial, double epsilon, int dead_time);

/// Arms the detector for `watch`. Throws ControllerBusyError unless the controller is
/// Steady, and InvalidCommandError for a target that equals the current mode or is not in
/// `table`.
ControllerState issue_mode_command(ControllerState cs, ModeId target, PortId watch,
                                   const GateLookupTable& table);

struct WatchedPower {
  bool wired = false;                // port has a sensing pipeline
  std::optional<double> watts;       // nullopt until the averager has filled
};
using PortAverages = std::array<WatchedPower, kPortCount>;

struct ControllerStep {
  ControllerState state;
  std::optional<GateStates> gates;  // new gate output, nullopt for no change
  bool zero_detected = false;
};

/// One tick. Throws WiringError if Armed and the watched port has no sensing pipeline.
ControllerStep controller_step(ControllerState cs, const PortAverages& averages,
                               const GateLookupTable& table);

}  // namespace prouter
