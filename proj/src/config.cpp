#include "prouter/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace prouter {

namespace {

class Reader {
 public:
  explicit Reader(std::vector<ConfigIssue>& issues) : issues_(issues) {}

  void fail(const std::string& path, const std::string& msg) { issues_.push_back({path, msg}); }

  bool expect_map(const YAML::Node& node, const std::string& path,
                  std::initializer_list<const char*> known) {
    if (!node.IsMap()) {
      fail(path, "expected a mapping");
      return false;
    }
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.contains(key)) fail(join(path, key), "unknown key");
    }
    return true;
  }

  template <class T>
  void read(const YAML::Node& parent, const char* key, const std::string& path, T& target) {
    const auto node = parent[key];
    if (!node) return;
    try {
      target = node.as<T>();
    } catch (const YAML::Exception&) {
      fail(join(path, key), "cannot read value '" + scalar(node) + "'");
    }
  }

  template <class T>
  bool read_required(const YAML::Node& parent, const char* key, const std::string& path,
                     T& target) {
    if (!parent[key]) {
      fail(join(path, key), "required");
      return false;
    }
    const auto before = issues_.size();
    read(parent, key, path, target);
    return issues_.size() == before;
  }

  bool read_port(const YAML::Node& parent, const char* key, const std::string& path,
                 PortId& target, bool required = false) {
    if (!parent[key]) {
      if (required) fail(join(path, key), "required");
      return !required;
    }
    int index = 0;
    const auto before = issues_.size();
    read(parent, key, path, index);
    if (issues_.size() != before) return false;
    try {
      target = PortId(index);
      return true;
    } catch (const ConfigError& e) {
      fail(join(path, key), e.what());
      return false;
    }
  }

  void read_window(const YAML::Node& parent, const char* key, const std::string& path,
                   Window& w) {
    const auto node = parent[key];
    if (!node) return;
    if (!node.IsSequence() || node.size() != 2) {
      fail(join(path, key), "expected [start, end]");
      return;
    }
    try {
      w = {node[0].as<double>(), node[1].as<double>()};
    } catch (const YAML::Exception&) {
      fail(join(path, key), "expected two numbers");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t k) {
    return path + "[" + std::to_string(k) + "]";
  }

 private:
  static std::string scalar(const YAML::Node& n) {
    if (n.IsScalar()) return n.Scalar();
    std::ostringstream os;
    os << n;
    return os.str();
  }

  std::vector<ConfigIssue>& issues_;
};

std::optional<SwitchTopology> read_topology(Reader& r, const YAML::Node& node) {
  if (!r.expect_map(node, "topology", {"switches", "rating"})) return std::nullopt;
  SwitchRating rating;
  if (const auto rn = node["rating"]; rn && r.expect_map(rn, "topology.rating", {"voltage", "current"})) {
    r.read(rn, "voltage", "topology.rating", rating.voltage);
    r.read(rn, "current", "topology.rating", rating.current);
  }
  const auto sws = node["switches"];
  if (!sws || !sws.IsSequence()) {
    r.fail("topology.switches", "expected a list of {name, ports: [a, b]}");
    return std::nullopt;
  }
  std::vector<SwitchBridge> bridges;
  bool ok = true;
  for (std::size_t k = 0; k < sws.size(); ++k) {
    const auto path = Reader::index("topology.switches", k);
    if (!r.expect_map(sws[k], path, {"name", "ports"})) {
      ok = false;
      continue;
    }
    SwitchBridge b;
    ok &= r.read_required(sws[k], "name", path, b.id.name);
    std::vector<int> ports;
    if (!r.read_required(sws[k], "ports", path, ports) || ports.size() != 2) {
      if (ports.size() != 2 && sws[k]["ports"]) r.fail(path + ".ports", "expected two ports");
      ok = false;
      continue;
    }
    try {
      b.a = PortId(ports[0]);
      b.b = PortId(ports[1]);
    } catch (const ConfigError& e) {
      r.fail(path + ".ports", e.what());
      ok = false;
      continue;
    }
    bridges.push_back(std::move(b));
  }
  if (!ok) return std::nullopt;
  try {
    return SwitchTopology(std::move(bridges), rating);
  } catch (const ConfigError& e) {
    r.fail("topology", e.what());
    return std::nullopt;
  }
}

std::optional<GateLookupTable> read_modes(Reader& r, const YAML::Node& node,
                                          const SwitchTopology& topo) {
  if (!node.IsSequence()) {
    r.fail("modes", "expected a list of {id, label, gates}");
    return std::nullopt;
  }
  std::vector<ModeEntry> entries;
  bool ok = true;
  for (std::size_t k = 0; k < node.size(); ++k) {
    const auto path = Reader::index("modes", k);
    if (!r.expect_map(node[k], path, {"id", "label", "gates"})) {
      ok = false;
      continue;
    }
    ModeEntry e{ModeId{0}, "", GateStates(topo)};
    ok &= r.read_required(node[k], "id", path, e.id.value);
    r.read(node[k], "label", path, e.label);
    const auto gates = node[k]["gates"];
    if (!gates || !gates.IsMap()) {
      r.fail(path + ".gates", "expected a mapping of switch name to on/off");
      ok = false;
      continue;
    }
    std::set<std::string> given;
    for (const auto& kv : gates) {
      const auto name = kv.first.as<std::string>();
      given.insert(name);
      bool on = false;
      try {
        on = kv.second.as<bool>();
      } catch (const YAML::Exception&) {
        r.fail(path + ".gates." + name, "expected on/off");
        ok = false;
        continue;
      }
      if (!topo.contains({name})) {
        r.fail(path + ".gates." + name, "unknown switch");
        ok = false;
        continue;
      }
      e.gates = set_gate(std::move(e.gates), {name}, on);
    }
    for (const auto& b : topo.bridges()) {
      if (!given.contains(b.id.name)) {
        r.fail(path + ".gates", "switch " + b.id.name + " not set");
        ok = false;
      }
    }
    entries.push_back(std::move(e));
  }
  if (!ok) return std::nullopt;
  try {
    return GateLookupTable(topo, std::move(entries));
  } catch (const ConfigError& e) {
    r.fail("modes", e.what());
    return std::nullopt;
  }
}

void read_events(Reader& r, const YAML::Node& node, Scenario& s) {
  if (!node.IsSequence()) {
    r.fail("events", "expected a list");
    return;
  }
  s.events.clear();
  for (std::size_t k = 0; k < node.size(); ++k) {
    const auto path = Reader::index("events", k);
    const auto ev = node[k];
    if (!r.expect_map(ev, path, {"t", "battery_ref", "mode", "watch_port", "house", "net_injection"})) {
      continue;
    }
    double t = 0.0;
    if (!r.read_required(ev, "t", path, t)) continue;
    const int kinds = (ev["battery_ref"] ? 1 : 0) + (ev["mode"] ? 1 : 0) + (ev["house"] ? 1 : 0);
    if (kinds != 1) {
      r.fail(path, "exactly one of battery_ref, mode, house is required");
      continue;
    }
    if (ev["battery_ref"]) {
      BatteryRefEvent e{t, 0.0};
      if (r.read_required(ev, "battery_ref", path, e.p_ref)) s.events.emplace_back(e);
    } else if (ev["mode"]) {
      ModeCommandEvent e{t, ModeId{0}, s.battery.port};
      if (r.read_required(ev, "mode", path, e.target.value) &&
          r.read_port(ev, "watch_port", path, e.watch)) {
        s.events.emplace_back(e);
      }
    } else {
      HouseNetEvent e{t, PortId(1), 0.0};
      if (r.read_port(ev, "house", path, e.port, true) &&
          r.read_required(ev, "net_injection", path, e.net_injection)) {
        s.events.emplace_back(e);
      }
    }
  }
}

Scenario build(const YAML::Node& root, std::vector<ConfigIssue>& issues) {
  Reader r(issues);
  Scenario s = default_scenario();
  if (!root || root.IsNull()) return s;
  if (!r.expect_map(root, "", {"simulation", "grid", "sense", "ctrl", "battery", "houses",
                               "topology", "modes", "events", "analysis", "figures"})) {
    return s;
  }

  if (const auto n = root["simulation"]; n && r.expect_map(n, "simulation", {"duration", "fs", "decimate"})) {
    r.read(n, "duration", "simulation", s.duration);
    r.read(n, "fs", "simulation", s.fs);
    r.read(n, "decimate", "simulation", s.decimate);
  }
  if (const auto n = root["grid"]; n && r.expect_map(n, "grid", {"vrms", "f_line", "phase"})) {
    r.read(n, "vrms", "grid", s.grid.vrms);
    r.read(n, "f_line", "grid", s.grid.f_line);
    r.read(n, "phase", "grid", s.grid.phase);
  }
  if (const auto n = root["sense"]; n && r.expect_map(n, "sense", {"window_periods", "epsilon"})) {
    r.read(n, "window_periods", "sense", s.sense.window_periods);
    r.read(n, "epsilon", "sense", s.sense.epsilon);
  }
  if (const auto n = root["ctrl"]; n && r.expect_map(n, "ctrl", {"initial_mode", "dead_time"})) {
    r.read(n, "initial_mode", "ctrl", s.ctrl.initial_mode.value);
    r.read(n, "dead_time", "ctrl", s.ctrl.dead_time);
  }
  if (const auto n = root["battery"];
      n && r.expect_map(n, "battery", {"port", "p_ref", "slew", "capacity_wh", "soc0", "lag_tau"})) {
    r.read_port(n, "port", "battery", s.battery.port);
    r.read(n, "p_ref", "battery", s.battery.p_ref);
    r.read(n, "slew", "battery", s.battery.slew);
    r.read(n, "capacity_wh", "battery", s.battery.capacity_wh);
    r.read(n, "soc0", "battery", s.battery.soc0);
    r.read(n, "lag_tau", "battery", s.battery.lag_tau);
  }
  if (const auto n = root["houses"]) {
    if (!n.IsSequence()) {
      r.fail("houses", "expected a list of {port, net_injection}");
    } else {
      s.houses.clear();
      for (std::size_t k = 0; k < n.size(); ++k) {
        const auto path = Reader::index("houses", k);
        if (!r.expect_map(n[k], path, {"port", "net_injection"})) continue;
        HouseNet h{PortId(1), 0.0};
        if (r.read_port(n[k], "port", path, h.port, true)) {
          r.read(n[k], "net_injection", path, h.net_injection);
          s.houses.push_back(h);
        }
      }
    }
  }

  bool custom_topology = false;
  if (const auto n = root["topology"]) {
    if (auto topo = read_topology(r, n)) {
      s.topology = std::move(*topo);
      custom_topology = true;
    }
  }
  if (const auto n = root["modes"]) {
    if (auto table = read_modes(r, n, s.topology)) s.table = std::move(*table);
  } else if (custom_topology) {
    try {
      std::vector<ModeEntry> entries;
      for (const auto& e : default_lookup_table().entries()) {
        GateStates g(s.topology);
        for (const auto& [sw, on] : e.gates.states()) g = set_gate(std::move(g), sw, on);
        entries.push_back({e.id, e.label, std::move(g)});
      }
      s.table = GateLookupTable(s.topology, std::move(entries));
    } catch (const ConfigError&) {
      r.fail("modes", "required when the topology does not contain SW1A and SW2A");
    }
  }

  if (const auto n = root["events"]) read_events(r, n, s);

  if (const auto n = root["analysis"]; n && r.expect_map(n, "analysis", {"pre_window", "post_window"})) {
    r.read_window(n, "pre_window", "analysis", s.analysis.pre);
    r.read_window(n, "post_window", "analysis", s.analysis.post);
  }
  if (const auto n = root["figures"];
      n && r.expect_map(n, "figures", {"steady1", "steady2", "switch_halfwidth", "port"})) {
    r.read_window(n, "steady1", "figures", s.figures.steady1);
    r.read_window(n, "steady2", "figures", s.figures.steady2);
    r.read(n, "switch_halfwidth", "figures", s.figures.switch_halfwidth);
    r.read_port(n, "port", "figures", s.figures.port);
  }
  return s;
}

std::vector<ConfigIssue> parse_into(const std::string& text, Scenario& out) {
  std::vector<ConfigIssue> issues;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    issues.push_back({"", std::string("YAML syntax error: ") + e.what()});
    return issues;
  }
  out = build(root, issues);
  if (issues.empty()) {
    auto more = validate(out);
    issues.insert(issues.end(), more.begin(), more.end());
  }
  return issues;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::vector<ConfigIssue>{{"", "cannot open " + path.string()}});
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

Scenario parse_scenario(const std::string& yaml_text) {
  Scenario s;
  if (auto issues = parse_into(yaml_text, s); !issues.empty()) throw ConfigError(std::move(issues));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path)); }

std::vector<ConfigIssue> check_scenario_file(const std::filesystem::path& path) {
  try {
    Scenario s;
    return parse_into(read_file(path), s);
  } catch (const ConfigError& e) {
    return e.issues();
  }
}

}  // namespace prouter
