#include "prouter/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "prouter/sense.hpp"

namespace prouter {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_pairwise(const Partition& partition, double t) {
  for (const auto& block : partition) {
    if (block.size() > 2) {
      throw MultiConnectionError("t=" + std::to_string(t) + " s: gate states join ports " +
                                 to_string({block}) +
                                 " in one block; a routed circuit must pair exactly two ports");
    }
  }
}

bool is_house(const std::vector<HouseNet>& houses, PortId p) {
  return std::any_of(houses.begin(), houses.end(), [&](const HouseNet& h) { return h.port == p; });
}

std::string at(const char* field, std::size_t k) {
  return std::string(field) + "[" + std::to_string(k) + "]";
}

}  // namespace

double event_time(const ScenarioEvent& e) noexcept {
  return std::visit([](const auto& ev) { return ev.t; }, e);
}

std::size_t Scenario::sample_count() const noexcept {
  return static_cast<std::size_t>(std::llround(duration * fs));
}

std::size_t sample_index(double t, double fs) noexcept {
  const double k = std::ceil(t * fs - 1e-6);
  return k <= 0.0 ? 0 : static_cast<std::size_t>(k);
}

Scenario default_scenario() {
  Scenario s;
  s.houses = {{PortId(1), 700.0}, {PortId(2), 0.0}};
  s.events = {
      BatteryRefEvent{1.0, -700.0},
      ModeCommandEvent{1.0, ModeId{2}, PortId(3)},
      HouseNetEvent{1.0, PortId(1), 0.0},
      HouseNetEvent{1.0, PortId(2), -700.0},
  };
  return s;
}

std::vector<ConfigIssue> validate(const Scenario& s) {
  std::vector<ConfigIssue> issues;
  auto fail = [&](std::string path, std::string msg) {
    issues.push_back({std::move(path), std::move(msg)});
  };
  auto finite = [](double x) { return std::isfinite(x); };

  if (!(s.duration > 0.0) || !finite(s.duration)) fail("simulation.duration", "must be > 0");
  if (!(s.fs > 0.0) || !finite(s.fs)) fail("simulation.fs", "must be > 0");
  if (s.decimate < 1) fail("simulation.decimate", "must be >= 1");
  if (!(s.grid.vrms > 0.0) || !finite(s.grid.vrms)) fail("grid.vrms", "must be > 0");
  if (!(s.grid.f_line > 0.0) || !finite(s.grid.f_line)) fail("grid.f_line", "must be > 0");
  if (!finite(s.grid.phase)) fail("grid.phase", "must be finite");
  if (s.fs > 0.0 && s.grid.f_line > 0.0) {
    const double per_period = s.fs / s.grid.f_line;
    if (std::fabs(per_period - std::round(per_period)) > 1e-9 * per_period ||
        std::round(per_period) < 1.0) {
      fail("simulation.fs", "fs / grid.f_line = " + std::to_string(per_period) +
                                " is not an integer number of samples per period");
    }
  }
  if (s.sense.window_periods < 1) fail("sense.window_periods", "must be >= 1");
  if (!(s.sense.epsilon > 0.0) || !finite(s.sense.epsilon)) fail("sense.epsilon", "must be > 0");
  if (s.ctrl.dead_time < 0) fail("ctrl.dead_time", "must be >= 0");
  if (!s.table.contains(s.ctrl.initial_mode)) {
    fail("ctrl.initial_mode", "mode " + std::to_string(s.ctrl.initial_mode.value) +
                                  " is not in the mode table");
  }

  const auto& b = s.battery;
  if (!finite(b.p_ref)) fail("battery.p_ref", "must be finite");
  if (!(b.slew > 0.0) || !finite(b.slew)) fail("battery.slew", "must be > 0");
  if (!(b.capacity_wh > 0.0) || !finite(b.capacity_wh)) fail("battery.capacity_wh", "must be > 0");
  if (!(b.soc0 >= 0.0 && b.soc0 <= 1.0)) fail("battery.soc0", "must be in [0, 1]");
  if (!(b.lag_tau >= 0.0) || !finite(b.lag_tau)) fail("battery.lag_tau", "must be >= 0");
  if (is_house(s.houses, b.port)) fail("battery.port", "port is also assigned to a house");

  std::set<PortId> house_ports;
  for (std::size_t k = 0; k < s.houses.size(); ++k) {
    if (!house_ports.insert(s.houses[k].port).second) {
      fail(at("houses", k) + ".port", "duplicate house port");
    }
    if (!finite(s.houses[k].net_injection)) fail(at("houses", k) + ".net_injection", "must be finite");
  }

  double last_t = 0.0;
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    const auto path = at("events", k);
    const double t = event_time(s.events[k]);
    if (!finite(t) || t < 0.0 || t > s.duration) {
      fail(path + ".t", "must lie in [0, simulation.duration]");
    }
    if (t < last_t) fail(path + ".t", "events must be sorted by time");
    last_t = std::max(last_t, t);
    std::visit(Overloaded{
                   [&](const BatteryRefEvent& e) {
                     if (!finite(e.p_ref)) fail(path + ".battery_ref", "must be finite");
                   },
                   [&](const ModeCommandEvent& e) {
                     if (!s.table.contains(e.target)) {
                       fail(path + ".mode", "mode " + std::to_string(e.target.value) +
                                                " is not in the mode table");
                     }
                   },
                   [&](const HouseNetEvent& e) {
                     if (!is_house(s.houses, e.port)) fail(path + ".house", "port has no house");
                     if (!finite(e.net_injection)) fail(path + ".net_injection", "must be finite");
                   },
               },
               s.events[k]);
  }

  auto check_window = [&](const Window& w, const std::string& path) {
    if (!(w.start < w.end) || w.start < 0.0 || w.end > s.duration + 1e-12) {
      fail(path, "window must satisfy 0 <= start < end <= simulation.duration");
    }
  };
  check_window(s.analysis.pre, "analysis.pre_window");
  check_window(s.analysis.post, "analysis.post_window");
  check_window(s.figures.steady1, "figures.steady1");
  check_window(s.figures.steady2, "figures.steady2");
  if (!(s.figures.switch_halfwidth > 0.0)) fail("figures.switch_halfwidth", "must be > 0");
  return issues;
}

RunResult run_scenario(const Scenario& s) {
  if (auto issues = validate(s); !issues.empty()) throw ConfigError(std::move(issues));

  const double dt = s.dt();
  const std::size_t n_samples = s.sample_count();
  const std::size_t window = window_samples(s.fs, s.grid.f_line, s.sense.window_periods);

  RunResult out;
  out.topology = s.topology;
  out.dt = dt;
  out.decimate = s.decimate;
  out.samples = n_samples;
  for (const auto& h : s.houses) out.ports.push_back(h.port);
  out.ports.push_back(s.battery.port);
  std::sort(out.ports.begin(), out.ports.end());
  out.records.reserve(n_samples / static_cast<std::size_t>(s.decimate) + 1);

  std::array<std::optional<PowerAverager>, kPortCount> averagers;
  for (PortId p : out.ports) averagers[p.slot()].emplace(window);

  std::vector<HouseNet> houses = s.houses;
  BatteryState battery{.p_ref = s.battery.p_ref,
                       .p_act = s.battery.p_ref,
                       .slew = s.battery.slew,
                       .capacity_wh = s.battery.capacity_wh,
                       .soc = s.battery.soc0,
                       .lag_tau = s.battery.lag_tau,
                       .lagged_ref = s.battery.p_ref};

  ControllerState controller = make_controller(s.ctrl.initial_mode, s.sense.epsilon, s.ctrl.dead_time);
  GateStates gates = s.table.gates(s.ctrl.initial_mode);
  std::uint32_t gate_bits = gates.to_bits(s.topology);
  Partition partition = connectivity(s.topology, gates);
  check_pairwise(partition, 0.0);

  std::size_t next_event = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) / s.fs;

    for (; next_event < s.events.size() &&
           sample_index(event_time(s.events[next_event]), s.fs) <= k;
         ++next_event) {
      std::visit(Overloaded{
                     [&](const BatteryRefEvent& e) { battery.p_ref = e.p_ref; },
                     [&](const ModeCommandEvent& e) {
                       controller = issue_mode_command(std::move(controller), e.target, e.watch,
                                                       s.table);
                     },
                     [&](const HouseNetEvent& e) {
                       for (auto& h : houses) {
                         if (h.port == e.port) h.net_injection = e.net_injection;
                       }
                     },
                 },
                 s.events[next_event]);
    }

    const PortFlows flows = port_flows(partition, houses, s.battery.port, battery, s.grid, t);

    TraceRecord rec;
    rec.t = t;
    rec.mode = controller.current;
    rec.gates = gate_bits;
    rec.phase = controller.phase;
    rec.battery_p = battery.p_act;
    rec.soc = battery.soc;

    PortAverages averages{};
    for (std::size_t slot = 0; slot < kPortCount; ++slot) {
      auto& pr = rec.ports[slot];
      pr.v = flows[slot].v;
      pr.i = flows[slot].i;
      pr.p = inst_power({t, pr.v, pr.i});
      if (averagers[slot]) {
        pr.pavg = averagers[slot]->update(pr.p);
        averages[slot] = {true, pr.pavg};
      }
    }

    const ModeId mode_before = controller.current;
    const std::optional<PortId> watched = controller.watch_port;
    auto step = controller_step(std::move(controller), averages, s.table);
    controller = std::move(step.state);
    if (step.zero_detected) {
      rec.switch_detected = true;
      out.switches.push_back({k, t, mode_before, controller.current, *watched,
                              averages[watched->slot()].watts.value_or(0.0)});
    }

    out.ledger.record(partition, averages, dt, t, rec.mode);
    if (k % static_cast<std::size_t>(s.decimate) == 0) out.records.push_back(rec);

    battery = battery_step(battery, dt);

    if (step.gates) {
      gates = std::move(*step.gates);
      gate_bits = gates.to_bits(s.topology);
      partition = connectivity(s.topology, gates);
      check_pairwise(partition, t + dt);
    }
  }
  return out;
}

}  // namespace prouter
