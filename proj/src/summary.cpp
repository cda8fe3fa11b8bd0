#include "prouter/summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "prouter/kernels.hpp"
#include "prouter/sense.hpp"

namespace prouter {

namespace {

double net_injection_at(const Scenario& s, PortId port, double t) {
  double value = 0.0;
  for (const auto& h : s.houses) {
    if (h.port == port) value = h.net_injection;
  }
  for (const auto& e : s.events) {
    if (const auto* h = std::get_if<HouseNetEvent>(&e); h && h->port == port && h->t <= t) {
      value = h->net_injection;
    }
  }
  return value;
}

bool is_house(const Scenario& s, PortId p) {
  return std::any_of(s.houses.begin(), s.houses.end(),
                     [&](const HouseNet& h) { return h.port == p; });
}

SteadyState steady_state(const RunResult& run, const Scenario& s, const Window& w) {
  SteadyState out{w, {}, {}};
  for (PortId p : run.ports) {
    const double mean = window_mean(run, p, w);
    out.mean.push_back({p, mean});
    if (is_house(s, p)) {
      out.grid_exchange.push_back({p, net_injection_at(s, p, w.start) - mean});
    }
  }
  return out;
}

}  // namespace

double SteadyState::at(PortId p) const {
  for (const auto& m : mean) {
    if (m.port == p) return m.watts;
  }
  throw ConfigError("port " + std::to_string(p.index()) + " not in steady-state summary");
}

double window_mean(const RunResult& run, PortId port, const Window& w) {
  if (run.records.empty()) throw ConfigError("empty trace");
  const double first = run.records.front().t;
  const double last = run.records.back().t + run.dt * run.decimate;
  const double tol = 1e-9;
  if (!(w.start < w.end) || w.start < first - tol || w.end > last + tol) {
    throw ConfigError("window [" + std::to_string(w.start) + ", " + std::to_string(w.end) +
                      ") lies outside the trace [" + std::to_string(first) + ", " +
                      std::to_string(last) + ")");
  }
  std::vector<double> values;
  for (const auto& r : run.records) {
    if (r.t < w.start - tol || r.t >= w.end - tol) continue;
    const auto& pavg = r.ports[port.slot()].pavg;
    if (!pavg) {
      throw ConfigError("window [" + std::to_string(w.start) + ", " + std::to_string(w.end) +
                        ") includes samples before the averager filled");
    }
    values.push_back(*pavg);
  }
  if (values.empty()) throw ConfigError("window contains no samples");
  return kernels::sum(values) / static_cast<double>(values.size());
}

Summary summarize(const RunResult& run, const Scenario& s) {
  Summary out;
  out.switches = run.switches;
  out.pre = steady_state(run, s, s.analysis.pre);
  out.post = steady_state(run, s, s.analysis.post);
  out.ledger_total_wh = run.ledger.total_wh();
  out.soc_final = run.records.back().soc;

  const std::size_t n = run.records.size();
  std::vector<double> t(n), v(n), i(n), p(n), v_ideal(n), vi(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = run.records[k].t;
    v_ideal[k] = grid_voltage(s.grid, t[k]);
  }

  // Rows whose gate pattern differs from the row before.
  std::vector<std::size_t> change_rows;
  for (std::size_t k = 1; k < n; ++k) {
    if (run.records[k].gates != run.records[k - 1].gates) change_rows.push_back(k);
  }
  const double halo = static_cast<double>(s.sense.window_periods) / s.grid.f_line;

  out.peaks.reserve(run.ports.size());
  for (PortId port : run.ports) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& pr = run.records[k].ports[port.slot()];
      v[k] = pr.v;
      i[k] = pr.i;
      p[k] = pr.p;
    }
    inst_power_batch(v, i, vi);
    out.power_product_residual_max =
        std::max(out.power_product_residual_max, kernels::max_abs_diff(p, vi));

    PortPeak peak{port, kernels::max_abs(v), kernels::max_abs(i)};
    out.ratings_ok = out.ratings_ok && peak.v_peak <= run.topology.rating().voltage &&
                     peak.i_peak <= run.topology.rating().current;
    out.peaks.push_back(peak);

    for (std::size_t row : change_rows) {
      const double tc = t[row];
      const auto lo = static_cast<std::size_t>(
          std::lower_bound(t.begin(), t.end(), tc - halo) - t.begin());
      const auto hi = static_cast<std::size_t>(
          std::upper_bound(t.begin(), t.end(), tc + halo) - t.begin());
      const std::span<const double> vs(v.data() + lo, hi - lo);
      const std::span<const double> is(v_ideal.data() + lo, hi - lo);
      out.max_voltage_deviation_at_switch =
          std::max(out.max_voltage_deviation_at_switch, kernels::max_abs_diff(vs, is));
    }
  }

  std::map<std::uint32_t, Partition> partitions;
  for (const auto& r : run.records) {
    auto it = partitions.find(r.gates);
    if (it == partitions.end()) {
      it = partitions
               .emplace(r.gates,
                        connectivity(run.topology, GateStates::from_bits(run.topology, r.gates)))
               .first;
    }
    for (const auto& block : it->second) {
      if (block.size() < 2) continue;
      double total = 0.0;
      for (PortId q : block) total += r.ports[q.slot()].p;
      out.power_balance_residual_max = std::max(out.power_balance_residual_max, std::fabs(total));
    }
  }

  for (std::size_t k = 1; k < n; ++k) {
    out.max_battery_step = std::max(
        out.max_battery_step, std::fabs(run.records[k].battery_p - run.records[k - 1].battery_p));
  }
  out.battery_step_bound = s.battery.slew * run.dt * run.decimate;
  return out;
}

nlohmann::json to_json(const Summary& s, const RunResult& run) {
  using nlohmann::json;
  auto port_map = [](const std::vector<PortMean>& v) {
    json j = json::object();
    for (const auto& m : v) j[std::to_string(m.port.index())] = m.watts;
    return j;
  };
  auto steady = [&](const SteadyState& st) {
    return json{{"window", {st.window.start, st.window.end}},
                {"mean_power_w", port_map(st.mean)},
                {"grid_exchange_w", port_map(st.grid_exchange)}};
  };

  json switches = json::array();
  for (const auto& e : s.switches) {
    switches.push_back({{"sample", e.sample},
                        {"t_detect", e.t_detect},
                        {"t_applied", e.t_detect + run.dt},
                        {"from_mode", e.from.value},
                        {"to_mode", e.to.value},
                        {"watch_port", e.watch.index()},
                        {"avg_at_detect_w", e.avg_at_detect}});
  }
  json peaks = json::object();
  for (const auto& p : s.peaks) {
    peaks[std::to_string(p.port.index())] = {{"v_peak", p.v_peak}, {"i_peak", p.i_peak}};
  }
  json ledger = json::array();
  for (const auto& [pair, wh] : run.ledger.totals()) {
    ledger.push_back(
        {{"source", pair.first.index()}, {"sink", pair.second.index()}, {"energy_wh", wh}});
  }

  return json{
      {"switches", switches},
      {"steady_pre", steady(s.pre)},
      {"steady_post", steady(s.post)},
      {"max_voltage_deviation_at_switch_v", s.max_voltage_deviation_at_switch},
      {"power_balance_residual_max_w", s.power_balance_residual_max},
      {"power_product_residual_max_w", s.power_product_residual_max},
      {"max_battery_step_w", s.max_battery_step},
      {"battery_step_bound_w", s.battery_step_bound},
      {"peaks", peaks},
      {"ratings_ok", s.ratings_ok},
      {"ledger", ledger},
      {"ledger_total_wh", s.ledger_total_wh},
      {"soc_final", s.soc_final},
      {"samples", run.samples},
      {"kernel_isa", std::string(kernels::isa_name(kernels::active_isa()))},
  };
}

}  // namespace prouter
