// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "prouter/engine.hpp"
#include "prouter/kernels.hpp"
#include "prouter/sense.hpp"
#include "prouter/summary.hpp"
#include "prouter/trace_io.hpp"

using namespace prouter;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt_double(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

const RunResult& default_run() {
  static const RunResult run = run_scenario(default_scenario());
  return run;
}

Partition partition_of(const RunResult& run, const TraceRecord& r) {
  return connectivity(run.topology, GateStates::from_bits(run.topology, r.gates));
}

Outcome steady_states() {
  const auto start = std::chrono::steady_clock::now();
  const auto s = default_scenario();
  const auto run = run_scenario(s);
  const auto sum = summarize(run, s);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  struct Expect {
    const SteadyState* st;
    int port;
    double watts;
  };
  const Expect expect[] = {{&sum.pre, 1, 700.0},  {&sum.pre, 2, 0.0},    {&sum.pre, 3, -700.0},
                           {&sum.post, 1, 0.0},   {&sum.post, 2, -700.0}, {&sum.post, 3, 700.0}};
  double worst = 0.0;
  for (const auto& e : expect) {
    // 1% of the 700 W rating for the nominally idle ports.
    worst = std::max(worst, std::fabs(e.st->at(PortId(e.port)) - e.watts) / 700.0);
  }
  return {worst <= 0.01 && secs < 5.0,
          "worst relative error " + fmt_double(worst) + ", runtime " + fmt_double(secs) + " s"};
}

Outcome switch_time() {
  const auto& run = default_run();
  if (run.switches.size() != 1) {
    return {false, std::to_string(run.switches.size()) + " switch events"};
  }
  const double t = run.switches.front().t_detect;
  return {std::fabs(t - 1.973) <= 1.0 / 60.0, "t_switch " + fmt_double(t) + " s"};
}

Outcome zero_power_switching() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> slew_d(100.0, 2000.0);
  std::uniform_real_distribution<double> power_d(100.0, 2000.0);
  std::uniform_real_distribution<double> tcmd_d(0.05, 1.5);
  std::uniform_real_distribution<double> phase_d(-std::numbers::pi, std::numbers::pi);
  const double epsilon = 5.0;

  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double slew = slew_d(rng);
    const double power = power_d(rng);
    const double t_cmd = std::round(tcmd_d(rng) * 12000.0) / 12000.0;

    Scenario s = default_scenario();
    s.grid.phase = phase_d(rng);
    s.battery.slew = slew;
    s.battery.p_ref = power;
    s.houses = {{PortId(1), power}, {PortId(2), 0.0}};
    s.events = {BatteryRefEvent{t_cmd, -power}, ModeCommandEvent{t_cmd, ModeId{2}, PortId(3)},
                HouseNetEvent{t_cmd, PortId(1), 0.0}, HouseNetEvent{t_cmd, PortId(2), -power}};
    s.duration = t_cmd + power / slew + 0.25;
    s.analysis = {{0.0, 0.0}, {0.0, 0.0}};
    s.analysis.pre = {0.0, s.duration};
    s.analysis.post = {0.0, s.duration};
    s.figures.steady1 = {0.0, s.duration};
    s.figures.steady2 = {0.0, s.duration};

    const auto run = run_scenario(s);
    std::size_t changes = 0;
    for (std::size_t k = 1; k < run.records.size(); ++k) {
      if (run.records[k].gates == run.records[k - 1].gates) continue;
      ++changes;
      for (std::size_t row : {k - 1, k}) {
        const auto& pavg = run.records[row].ports[2].pavg;
        const double a = pavg ? std::fabs(*pavg) : INFINITY;
        worst = std::max(worst, a);
      }
    }
    if (run.switches.size() != 1 || changes == 0) ++failures;
  }
  return {failures == 0 && worst < epsilon,
          "100 scenarios, " + std::to_string(failures) + " without a switch, max |pavg| " +
              fmt_double(worst, 9) + " W at gate-change rows"};
}

Outcome voltage_continuity() {
  const auto s = default_scenario();
  const auto& run = default_run();
  double worst = 0.0;
  for (const auto& r : run.records) {
    const double ideal = grid_voltage(s.grid, r.t);
    for (PortId p : run.ports) worst = std::max(worst, std::fabs(r.ports[p.slot()].v - ideal));
  }
  return {worst <= 1e-12, "max |v - v_ideal| " + fmt_double(worst) + " V"};
}

Outcome average_power_accuracy() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> vrms_d(50.0, 400.0);
  std::uniform_real_distribution<double> irms_d(0.1, 20.0);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  const std::size_t n = window_samples(12000.0, 60.0, 1);

  double worst_sin = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double vrms = vrms_d(rng);
    const double irms = irms_d(rng);
    const double phi = ang(rng);
    const double theta0 = ang(rng);
    PowerAverager avg(n);
    std::optional<double> out;
    for (std::size_t k = 0; k < 3 * n; ++k) {
      const double th = 2.0 * std::numbers::pi * 60.0 * static_cast<double>(k) / 12000.0 + theta0;
      out = avg.update(inst_power({0.0, std::numbers::sqrt2 * vrms * std::sin(th),
                                   std::numbers::sqrt2 * irms * std::sin(th - phi)}));
    }
    worst_sin = std::max(worst_sin, std::fabs(*out - vrms * irms * std::cos(phi)) / (vrms * irms));
  }

  std::uniform_real_distribution<double> p_d(-2000.0, 2000.0);
  double worst_naive = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(10 * n);
    for (auto& v : x) v = p_d(rng);
    PowerAverager avg(n);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto out = avg.update(x[k]);
      if (!out) continue;
      long double acc = 0.0L;
      for (std::size_t j = k + 1 - n; j <= k; ++j) acc += x[j];
      worst_naive = std::max(
          worst_naive, static_cast<double>(std::fabs(*out - acc / static_cast<long double>(n))));
    }
  }
  return {worst_sin <= 1e-6 && worst_naive <= 1e-12,
          "sinusoid rel error " + fmt_double(worst_sin) + ", naive-mean abs error " +
              fmt_double(worst_naive) + " W"};
}

// All ports reachable from `from` by walking ON switches, by plain depth-first search.
std::set<int> reachable(const SwitchTopology& topo, const GateStates& g, int from) {
  std::set<int> seen{from};
  std::vector<int> stack{from};
  while (!stack.empty()) {
    const int at = stack.back();
    stack.pop_back();
    for (const auto& b : topo.bridges()) {
      if (!g.is_on(b.id)) continue;
      for (auto [x, y] : {std::pair{b.a.index(), b.b.index()}, std::pair{b.b.index(), b.a.index()}}) {
        if (x == at && seen.insert(y).second) stack.push_back(y);
      }
    }
  }
  return seen;
}

Outcome connectivity_matches_search() {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  for (const auto& topo : {default_topology(), extended_topology()}) {
    for (std::uint32_t bits = 0; bits < (1u << topo.size()); ++bits) {
      const auto g = GateStates::from_bits(topo, bits);
      const auto partition = connectivity(topo, g);
      for (int p = 1; p <= kPortCount; ++p) {
        const auto& block = block_of(partition, PortId(p));
        std::set<int> uf;
        for (PortId q : block) uf.insert(q.index());
        mismatches += uf == reachable(topo, g, p) ? 0 : 1;
      }
      ++checked;
    }
  }
  return {mismatches == 0,
          std::to_string(checked) + " gate patterns, " + std::to_string(mismatches) + " mismatches"};
}

Outcome ledger_conservation() {
  const auto& run = default_run();
  std::vector<double> inflow(run.records.size(), 0.0);
  for (std::size_t k = 0; k < run.records.size(); ++k) {
    for (PortId p : run.ports) {
      const auto& pavg = run.records[k].ports[p.slot()].pavg;
      if (pavg && *pavg > 0.0) inflow[k] += *pavg;
    }
  }
  const double integral = kernels::trapezoid(inflow, run.dt) / 3600.0;
  const double total = run.ledger.total_wh();
  const double rel = std::fabs(total - integral) / integral;
  return {rel <= 1e-4, "ledger " + fmt_double(total) + " Wh, integral " + fmt_double(integral) +
                           " Wh, rel diff " + fmt_double(rel)};
}

Outcome power_balance() {
  const auto& run = default_run();
  double worst = 0.0;
  for (const auto& r : run.records) {
    for (const auto& block : partition_of(run, r)) {
      if (block.size() < 2) continue;
      double total = 0.0;
      for (PortId p : block) total += r.ports[p.slot()].p;
      worst = std::max(worst, std::fabs(total));
    }
  }
  return {worst <= 1e-9, "max |sum p| over connected ports " + fmt_double(worst) + " W"};
}

Outcome reproducibility() {
  auto csv = [](const RunResult& run) {
    std::ostringstream trace, ledger;
    write_trace_csv(trace, run);
    write_ledger_csv(ledger, run.ledger);
    return trace.str() + ledger.str();
  };
  const auto a = csv(run_scenario(default_scenario()));
  const auto b = csv(run_scenario(default_scenario()));
  return {a == b, std::to_string(a.size()) + " bytes compared"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"steady-state port powers within 1%, run under 5 s", steady_states},
      {"switch time 1.973 s +/- one line period", switch_time},
      {"gates change only at |pavg| < epsilon (100 random scenarios)", zero_power_switching},
      {"port voltage equals the ideal grid sinusoid", voltage_continuity},
      {"period-averaged power accuracy", average_power_accuracy},
      {"union-find connectivity equals path search", connectivity_matches_search},
      {"ledger equals integrated inflow within 0.01%", ledger_conservation},
      {"power balance across connected ports", power_balance},
      {"byte-identical outputs on repeated runs", reproducibility},
  };

  std::printf("kernel ISA: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
  int failed = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
