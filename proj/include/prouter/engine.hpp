#pragma once

// Fixed-step simulation of the router: plant -> sensing -> controller -> matrix, with
// per-sample trace records and the energy-attribution ledger.

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "prouter/ctrl.hpp"
#include "prouter/errors.hpp"
#include "prouter/ledger.hpp"
#include "prouter/matrix.hpp"
#include "prouter/plant.hpp"

namespace prouter {

struct Window {
  double start = 0.0;  // s, inclusive
  double end = 0.0;    // s, exclusive
};

struct SenseParams {
  int window_periods = 1;
  double epsilon = 5.0;  // W
};

struct CtrlParams {
  ModeId initial_mode{1};
  int dead_time = 1;  // samples
};

struct BatteryParams {
  PortId port{3};
  double p_ref = 700.0;  // W, initial reference and initial actual power
  double slew = 720.0;   // W/s
  double capacity_wh = 6500.0;
  double soc0 = 0.5;
  double lag_tau = 0.0;  // s
};

struct AnalysisParams {
  Window pre{0.5, 1.0};
  Window post{3.5, 4.0};
};

struct FigureParams {
  Window steady1{0.5, 0.55};
  Window steady2{3.5, 3.55};
  double switch_halfwidth = 0.05;  // s around the gate change
  PortId port{3};                  // port plotted around the switch
};

struct BatteryRefEvent {
  double t = 0.0;
  double p_ref = 0.0;
};

struct ModeCommandEvent {
  double t = 0.0;
  ModeId target;
  PortId watch;
};

struct HouseNetEvent {
  double t = 0.0;
  PortId port;
  double net_injection = 0.0;
};

using ScenarioEvent = std::variant<BatteryRefEvent, ModeCommandEvent, HouseNetEvent>;

double event_time(const ScenarioEvent& e) noexcept;

struct Scenario {
  double duration = 4.0;  // s
  double fs = 12000.0;    // Hz
  int decimate = 1;
  GridSource grid;
  SenseParams sense;
  CtrlParams ctrl;
  SwitchTopology topology = default_topology();
  GateLookupTable table = default_lookup_table();
  BatteryParams battery;
  std::vector<HouseNet> houses;
  std::vector<ScenarioEvent> events;  // sorted by time
  AnalysisParams analysis;
  FigureParams figures;

  double dt() const noexcept { return 1.0 / fs; }
  std::size_t sample_count() const noexcept;
};

/// The three-port charge-to-discharge experiment: 700 W from house 1 into the battery in
/// mode 1; at t = 1 s the battery reference steps to -700 W and mode 2 (battery -> house 2)
/// is commanded with zero detection on port 3; run to 4 s.
Scenario default_scenario();

/// Cross-field checks. Returns every problem found, each with its field path.
std::vector<ConfigIssue> validate(const Scenario& s);

/// First sample index at or after time t.
std::size_t sample_index(double t, double fs) noexcept;

struct PortRecord {
  double v = 0.0;
  double i = 0.0;
  double p = 0.0;
  std::optional<double> pavg;
};

struct TraceRecord {
  double t = 0.0;
  std::array<PortRecord, kPortCount> ports{};
  ModeId mode;
  std::uint32_t gates = 0;  // bit k = switch k of the topology
  ControllerPhase phase = ControllerPhase::kSteady;
  double battery_p = 0.0;  // W, positive charging
  double soc = 0.0;
  bool switch_detected = false;  // this sample's average triggered a gate change
};

struct GateChangeEvent {
  std::size_t sample = 0;  // sample whose average fired the detector
  double t_detect = 0.0;
  ModeId from;
  ModeId to;
  PortId watch;
  double avg_at_detect = 0.0;
};

struct RunResult {
  std::vector<PortId> ports;  // ports with a device attached, ascending
  std::vector<TraceRecord> records;
  EnergyLedger ledger;
  std::vector<GateChangeEvent> switches;
  SwitchTopology topology;
  double dt = 0.0;
  int decimate = 1;
  std::size_t samples = 0;
};

/// Deterministic: the same scenario always yields bit-identical records.
/// Throws ConfigError for an invalid scenario and SimulationError (including
/// MultiConnectionError and ControllerBusyError) when a step cannot proceed.
RunResult run_scenario(const Scenario& s);

}  // namespace prouter
