#include "doctest.h"

#include <sstream>

#include "prouter/config.hpp"
#include "prouter/errors.hpp"
#include "prouter/trace_io.hpp"

using namespace prouter;

namespace {

const std::filesystem::path kDefaultConfig =
    std::filesystem::path(PROUTER_SOURCE_DIR) / "configs" / "default.yaml";

std::vector<ConfigIssue> issues_of(const std::string& yaml) {
  try {
    parse_scenario(yaml);
  } catch (const ConfigError& e) {
    return e.issues().empty() ? std::vector<ConfigIssue>{{"", e.what()}} : e.issues();
  }
  return {};
}

bool has_issue(const std::vector<ConfigIssue>& issues, const std::string& path) {
  for (const auto& i : issues) {
    if (i.path == path) return true;
  }
  return false;
}

std::string trace_text(const Scenario& s) {
  std::ostringstream os;
  write_trace_csv(os, run_scenario(s));
  return os.str();
}

}  // namespace

TEST_CASE("the shipped config reproduces the built-in scenario") {
  CHECK(trace_text(load_scenario(kDefaultConfig)) == trace_text(default_scenario()));
  CHECK(check_scenario_file(kDefaultConfig).empty());
}

TEST_CASE("empty document means defaults") {
  const auto s = parse_scenario("");
  CHECK(s.fs == 12000.0);
  CHECK(s.events.size() == 4);
}

TEST_CASE("unknown keys are reported with their path") {
  const auto issues = issues_of("simulation:\n  fs: 12000\n  bogus: 1\n");
  CHECK(has_issue(issues, "simulation.bogus"));
  CHECK(has_issue(issues_of("nonsense: 3\n"), "nonsense"));
}

TEST_CASE("range and consistency errors") {
  CHECK(has_issue(issues_of("simulation: {fs: 10000}\n"), "simulation.fs"));
  CHECK(has_issue(issues_of("sense: {epsilon: -1}\n"), "sense.epsilon"));
  CHECK(has_issue(issues_of("simulation: {fs: abc}\n"), "simulation.fs"));
  const auto many = issues_of("sense: {epsilon: 0}\nbattery: {slew: -3}\n");
  CHECK(has_issue(many, "sense.epsilon"));
  CHECK(has_issue(many, "battery.slew"));
  CHECK_FALSE(issues_of("simulation: [1, 2\n").empty());
}

TEST_CASE("missing file is a config error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/prouter.yaml"), ConfigError);
  CHECK_FALSE(check_scenario_file("/nonexistent/prouter.yaml").empty());
}

TEST_CASE("custom topology, modes and events") {
  const auto s = parse_scenario(R"(
simulation: {duration: 2.0, fs: 6000}
grid: {vrms: 230, f_line: 50}
analysis: {pre_window: [0.2, 0.5], post_window: [1.5, 2.0]}
figures: {steady1: [0.2, 0.25], steady2: [1.5, 1.55]}
topology:
  switches:
    - {name: SW1A, ports: [1, 3]}
    - {name: SW2A, ports: [2, 3]}
    - {name: SW1B, ports: [1, 4]}
modes:
  - {id: 1, gates: {SW1A: on, SW2A: off, SW1B: off}}
  - {id: 2, gates: {SW1A: off, SW2A: on, SW1B: off}}
  - {id: 5, gates: {SW1A: off, SW2A: off, SW1B: on}}
events:
  - {t: 0.5, battery_ref: -300}
  - {t: 0.5, mode: 2, watch_port: 3}
  - {t: 0.6, house: 2, net_injection: -300}
)");
  CHECK(s.topology.size() == 3);
  CHECK(s.table.contains(ModeId{5}));
  CHECK(s.table.gates(ModeId{5}).is_on({"SW1B"}));
  REQUIRE(s.events.size() == 3);
  CHECK(std::get<BatteryRefEvent>(s.events[0]).p_ref == -300.0);
  CHECK(std::get<ModeCommandEvent>(s.events[1]).watch == PortId(3));
  CHECK(std::get<HouseNetEvent>(s.events[2]).port == PortId(2));
  CHECK(s.grid.vrms == 230.0);
}

TEST_CASE("mode entries must cover the topology") {
  const auto issues = issues_of(R"(
modes:
  - {id: 1, gates: {SW1A: on}}
  - {id: 2, gates: {SW1A: off, SW2A: on}}
)");
  CHECK_FALSE(issues.empty());
}

TEST_CASE("bad events") {
  CHECK(has_issue(issues_of("events:\n  - {t: 9.0, battery_ref: 1}\n"), "events[0].t"));
  CHECK_FALSE(issues_of("events:\n  - {t: 1.0, mode: 9, watch_port: 3}\n").empty());
  CHECK_FALSE(issues_of("events:\n  - {t: 1.0, mode: 2, watch_port: 7}\n").empty());
  CHECK_FALSE(issues_of("events:\n  - {t: 1.0}\n").empty());
}
