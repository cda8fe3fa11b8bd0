#include "prouter/ctrl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "prouter/errors.hpp"

namespace prouter {

namespace {

std::string mode_name(ModeId id) { return "mode " + std::to_string(id.value); }

}  // namespace

GateLookupTable::GateLookupTable(const SwitchTopology& topology, std::vector<ModeEntry> entries)
    : entries_(std::move(entries)) {
  std::set<ModeId> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.id).second) throw ConfigError("duplicate " + mode_name(e.id));
    for (const auto& b : topology.bridges()) {
      if (!e.gates.contains(b.id)) {
        throw ConfigError(mode_name(e.id) + " does not set switch " + b.id.name);
      }
    }
    for (const auto& [sw, on] : e.gates.states()) {
      if (!topology.contains(sw)) {
        throw ConfigError(mode_name(e.id) + " sets unknown switch " + sw.name);
      }
    }
  }
}

bool GateLookupTable::contains(ModeId id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ModeEntry& e) { return e.id == id; });
}

const ModeEntry& GateLookupTable::entry(ModeId id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return e;
  }
  throw InvalidCommandError(mode_name(id) + " is not in the lookup table");
}

GateLookupTable default_lookup_table() {
  const auto topo = default_topology();
  const GateStates off(topo);
  return GateLookupTable(
      topo, {
                {ModeId{1}, "house1-battery", set_gate(off, {"SW1A"}, true)},
                {ModeId{2}, "house2-battery", set_gate(off, {"SW2A"}, true)},
            });
}

std::vector<GateStep> gate_sequence(const GateStates& old_gates, const GateStates& new_gates,
                                    int dead_time) {
  if (old_gates == new_gates) throw std::invalid_argument("gate_sequence: old == new");
  if (dead_time < 0) throw std::invalid_argument("gate_sequence: negative dead time");

  GateStates opened = old_gates;
  bool any_off = false;
  bool any_on = false;
  for (const auto& [sw, on] : new_gates.states()) {
    const bool was_on = old_gates.is_on(sw);
    if (was_on && !on) {
      opened = set_gate(std::move(opened), sw, false);
      any_off = true;
    } else if (!was_on && on) {
      any_on = true;
    }
  }

  if (any_off && any_on && dead_time > 0) {
    return {{std::move(opened), dead_time}, {new_gates, 0}};
  }
  return {{new_gates, 0}};
}

std::string_view to_string(ControllerPhase phase) noexcept {
  switch (phase) {
    case ControllerPhase::kSteady:
      return "steady";
    case ControllerPhase::kArmed:
      return "armed";
    case ControllerPhase::kSwitching:
      return "switching";
  }
  return "?";
}

ControllerState make_controller(ModeId initial, double epsilon, int dead_time) {
  if (dead_time < 0) throw ConfigError("dead time must be >= 0 samples");
  ControllerState cs;
  cs.current = initial;
  cs.detector = ZeroDetector(epsilon);
  cs.dead_time = dead_time;
  return cs;
}

ControllerState issue_mode_command(ControllerState cs, ModeId target, PortId watch,
                                   const GateLookupTable& table) {
  if (cs.phase != ControllerPhase::kSteady) {
    throw ControllerBusyError("mode command for " + mode_name(target) + " rejected: controller " +
                              std::string(to_string(cs.phase)));
  }
  if (!table.contains(target)) {
    throw InvalidCommandError(mode_name(target) + " is not in the lookup table");
  }
  if (target == cs.current) {
    throw InvalidCommandError("router is already in " + mode_name(target));
  }
  cs.pending = target;
  cs.watch_port = watch;
  cs.phase = ControllerPhase::kArmed;
  cs.detector.arm();
  return cs;
}

ControllerStep controller_step(ControllerState cs, const PortAverages& averages,
                               const GateLookupTable& table) {
  ControllerStep out;

  switch (cs.phase) {
    case ControllerPhase::kSteady:
      break;

    case ControllerPhase::kArmed: {
      const auto& watched = averages[cs.watch_port->slot()];
      if (!watched.wired) {
        throw WiringError("controller watches port " + std::to_string(cs.watch_port->index()) +
                          " but it has no averaged power");
      }
      if (!watched.watts || !cs.detector.fires(*watched.watts)) break;

      auto steps = gate_sequence(table.gates(cs.current), table.gates(*cs.pending), cs.dead_time);
      out.zero_detected = true;
      out.gates = steps.front().gates;
      cs.current = *cs.pending;
      cs.pending.reset();
      cs.watch_port.reset();
      cs.detector.disarm();
      if (steps.size() > 1) {
        cs.hold = steps.front().samples;
        cs.remaining.assign(std::make_move_iterator(steps.begin() + 1),
                            std::make_move_iterator(steps.end()));
        cs.phase = ControllerPhase::kSwitching;
      } else {
        cs.phase = ControllerPhase::kSteady;
      }
      break;
    }

    case ControllerPhase::kSwitching:
      if (--cs.hold > 0) break;
      out.gates = std::move(cs.remaining.front().gates);
      cs.hold = cs.remaining.front().samples;
      cs.remaining.erase(cs.remaining.begin());
      if (cs.remaining.empty()) cs.phase = ControllerPhase::kSteady;
      break;
  }

  out.state = std::move(cs);
  return out;
}

}  // namespace prouter
