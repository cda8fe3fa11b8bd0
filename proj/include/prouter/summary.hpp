#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "prouter/engine.hpp"

namespace prouter {

struct PortMean {
  PortId port;
  double watts = 0.0;
};

struct SteadyState {
  Window window;
  std::vector<PortMean> mean;  // averaged power per active port over the window
  // House bookkeeping: net injection minus routed inflow, i.e. what the grid absorbs.
  std::vector<PortMean> grid_exchange;

  double at(PortId p) const;
};

struct PortPeak {
  PortId port;
  double v_peak = 0.0;
  double i_peak = 0.0;
};

struct Summary {
  std::vector<GateChangeEvent> switches;
  SteadyState pre;
  SteadyState post;
  double max_voltage_deviation_at_switch = 0.0;  // V, vs the ideal grid sinusoid
  double power_balance_residual_max = 0.0;       // W, per sample per connected block
  double power_product_residual_max = 0.0;       // W, max |p - v*i|
  double max_battery_step = 0.0;                 // W between consecutive records
  double battery_step_bound = 0.0;               // slew * dt * decimate
  std::vector<PortPeak> peaks;
  bool ratings_ok = true;
  double ledger_total_wh = 0.0;
  double soc_final = 0.0;
};

/// Steady-state means, switch diagnostics and trace-level checks. Throws ConfigError when a
/// window falls outside the trace or contains samples whose average is not ready.
Summary summarize(const RunResult& run, const Scenario& scenario);

/// Mean of the averaged power of `port` over records with t in [w.start, w.end).
double window_mean(const RunResult& run, PortId port, const Window& w);

nlohmann::json to_json(const Summary& s, const RunResult& run);

}  // namespace prouter
