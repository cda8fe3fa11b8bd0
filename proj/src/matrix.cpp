#include "prouter/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "prouter/errors.hpp"

namespace prouter {

PortId::PortId(int index) : index_(index) {
  if (index < 1 || index > kPortCount) {
    throw ConfigError("port " + std::to_string(index) + " out of range 1.." +
                      std::to_string(kPortCount));
  }
}

SwitchTopology::SwitchTopology(std::vector<SwitchBridge> bridges, SwitchRating rating)
    : bridges_(std::move(bridges)), rating_(rating) {
  if (bridges_.size() > kMaxSwitches) {
    throw ConfigError("topology has " + std::to_string(bridges_.size()) +
                      " switches; at most " + std::to_string(kMaxSwitches) + " supported");
  }
  std::set<SwitchId> seen;
  for (const auto& b : bridges_) {
    if (b.id.name.empty()) throw ConfigError("switch with empty name");
    if (!seen.insert(b.id).second) throw ConfigError("duplicate switch " + b.id.name);
    if (b.a == b.b) throw ConfigError("switch " + b.id.name + " bridges a port to itself");
  }
  if (!(rating_.voltage > 0.0) || !(rating_.current > 0.0)) {
    throw ConfigError("switch ratings must be positive");
  }
}

bool SwitchTopology::contains(const SwitchId& id) const {
  return std::any_of(bridges_.begin(), bridges_.end(),
                     [&](const SwitchBridge& b) { return b.id == id; });
}

std::size_t SwitchTopology::position(const SwitchId& id) const {
  for (std::size_t k = 0; k < bridges_.size(); ++k) {
    if (bridges_[k].id == id) return k;
  }
  throw ConfigError("unknown switch " + id.name);
}

SwitchTopology default_topology() {
  return SwitchTopology({{{"SW1A"}, PortId(1), PortId(3)}, {{"SW2A"}, PortId(2), PortId(3)}});
}

SwitchTopology extended_topology() {
  return SwitchTopology({
      {{"SW1A"}, PortId(1), PortId(3)},
      {{"SW2A"}, PortId(2), PortId(3)},
      {{"SW1B"}, PortId(1), PortId(4)},
      {{"SW2B"}, PortId(2), PortId(4)},
      {{"SW12"}, PortId(1), PortId(2)},
      {{"SW34"}, PortId(3), PortId(4)},
      {{"SW1A2"}, PortId(1), PortId(3)},
      {{"SW2A2"}, PortId(2), PortId(3)},
  });
}

GateStates::GateStates(const SwitchTopology& topology) {
  for (const auto& b : topology.bridges()) state_.emplace(b.id, false);
}

bool GateStates::is_on(const SwitchId& id) const {
  auto it = state_.find(id);
  if (it == state_.end()) throw ConfigError("unknown switch " + id.name);
  return it->second;
}

std::uint32_t GateStates::to_bits(const SwitchTopology& topology) const {
  std::uint32_t bits = 0;
  for (std::size_t k = 0; k < topology.size(); ++k) {
    if (is_on(topology.bridges()[k].id)) bits |= (1u << k);
  }
  return bits;
}

GateStates GateStates::from_bits(const SwitchTopology& topology, std::uint32_t bits) {
  GateStates g(topology);
  for (std::size_t k = 0; k < topology.size(); ++k) {
    g.state_[topology.bridges()[k].id] = ((bits >> k) & 1u) != 0;
  }
  return g;
}

GateStates set_gate(GateStates gates, const SwitchId& sw, bool on) {
  auto it = gates.state_.find(sw);
  if (it == gates.state_.end()) throw ConfigError("unknown switch " + sw.name);
  it->second = on;
  return gates;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

Partition connectivity(const SwitchTopology& topology, const GateStates& gates) {
  UnionFind uf(kPortCount);
  for (const auto& b : topology.bridges()) {
    if (!gates.contains(b.id)) throw ConfigError("gate state missing for switch " + b.id.name);
    if (gates.is_on(b.id)) uf.unite(b.a.slot(), b.b.slot());
  }
  // Ports are visited in ascending order, so blocks come out sorted and ordered by minimum.
  Partition partition;
  std::vector<int> block_for_root(kPortCount, -1);
  for (int p = 1; p <= kPortCount; ++p) {
    const auto root = uf.find(static_cast<std::size_t>(p - 1));
    if (block_for_root[root] < 0) {
      block_for_root[root] = static_cast<int>(partition.size());
      partition.emplace_back();
    }
    partition[static_cast<std::size_t>(block_for_root[root])].push_back(PortId(p));
  }
  return partition;
}

const Block& block_of(const Partition& partition, PortId p) {
  for (const auto& block : partition) {
    if (std::find(block.begin(), block.end(), p) != block.end()) return block;
  }
  throw ConfigError("port " + std::to_string(p.index()) + " missing from partition");
}

std::optional<PortId> connected_peer(const Partition& partition, PortId p) {
  const auto& block = block_of(partition, p);
  if (block.size() == 1) return std::nullopt;
  if (block.size() > 2) {
    throw MultiConnectionError("port " + std::to_string(p.index()) + " is in block " +
                               to_string({block}) +
                               " of size " + std::to_string(block.size()) +
                               "; pairwise attribution needs blocks of at most two ports");
  }
  return block[0] == p ? block[1] : block[0];
}

std::optional<PortId> connected_peer(const SwitchTopology& topology, const GateStates& gates,
                                     PortId p) {
  return connected_peer(connectivity(topology, gates), p);
}

std::string to_string(const Partition& partition) {
  std::string out = "{";
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (b) out += ",";
    out += "{";
    for (std::size_t k = 0; k < partition[b].size(); ++k) {
      if (k) out += ",";
      out += std::to_string(partition[b][k].index());
    }
    out += "}";
  }
  return out + "}";
}

}  // namespace prouter
