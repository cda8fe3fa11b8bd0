#pragma once

// Crossbar switch matrix: topology, gate states and the port partition they induce.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace prouter {

inline constexpr int kPortCount = 4;

/// Router port, numbered 1..4.
class PortId {
 public:
  constexpr PortId() = default;
  explicit PortId(int index);

  constexpr int index() const noexcept { return index_; }
  /// Zero-based slot for array storage.
  constexpr std::size_t slot() const noexcept { return static_cast<std::size_t>(index_ - 1); }

  friend constexpr auto operator<=>(PortId, PortId) = default;

 private:
  int index_ = 1;
};

struct SwitchId {
  std::string name;

  friend auto operator<=>(const SwitchId&, const SwitchId&) = default;
};

struct SwitchBridge {
  SwitchId id;
  PortId a;
  PortId b;
};

struct SwitchRating {
  double voltage = 650.0;  // V
  double current = 20.0;   // A
};

/// Which bidirectional switches exist and which port pair each one bridges.
class SwitchTopology {
 public:
  SwitchTopology() = default;
  /// Throws ConfigError on duplicate names, self-loops, or more than kMaxSwitches switches.
  explicit SwitchTopology(std::vector<SwitchBridge> bridges, SwitchRating rating = {});

  static constexpr std::size_t kMaxSwitches = 32;

  const std::vector<SwitchBridge>& bridges() const noexcept { return bridges_; }
  const SwitchRating& rating() const noexcept { return rating_; }
  std::size_t size() const noexcept { return bridges_.size(); }

  bool contains(const SwitchId& id) const;
  /// Position of `id` in bridges(); throws ConfigError if unknown.
  std::size_t position(const SwitchId& id) const;

 private:
  std::vector<SwitchBridge> bridges_;
  SwitchRating rating_;
};

/// SW1A (1-3) and SW2A (2-3): the subset used for the three-port routing experiment.
SwitchTopology default_topology();

/// An 8-switch layout for exercising the full matrix. The bridge map beyond SW1A/SW2A
/// is an assumption: the 2x2 crossbar {1,2}x{3,4}, the 1-2 and 3-4 ties, and two
/// parallel legs on 1-3 and 2-3.
SwitchTopology extended_topology();

/// On/off state for every switch of a topology.
class GateStates {
 public:
  GateStates() = default;
  /// All switches of `topology` OFF.
  explicit GateStates(const SwitchTopology& topology);

  bool is_on(const SwitchId& id) const;
  bool contains(const SwitchId& id) const { return state_.contains(id); }
  const std::map<SwitchId, bool>& states() const noexcept { return state_; }

  /// Bit i is switch i of `topology`; throws ConfigError if a topology switch is missing.
  std::uint32_t to_bits(const SwitchTopology& topology) const;
  static GateStates from_bits(const SwitchTopology& topology, std::uint32_t bits);

  friend bool operator==(const GateStates&, const GateStates&) = default;

 private:
  friend GateStates set_gate(GateStates, const SwitchId&, bool);
  std::map<SwitchId, bool> state_;
};

/// Returns `gates` with `sw` set; throws ConfigError for a switch that `gates` does not know.
GateStates set_gate(GateStates gates, const SwitchId& sw, bool on);

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t block_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

using Block = std::vector<PortId>;
/// Blocks hold sorted ports; blocks are ordered by their smallest port.
using Partition = std::vector<Block>;

/// Ports joined by a path of ON switches share a block. Throws ConfigError if `gates`
/// does not cover the topology.
Partition connectivity(const SwitchTopology& topology, const GateStates& gates);

const Block& block_of(const Partition& partition, PortId p);

/// The other port of p's two-port block, or nullopt when p is isolated.
/// Throws MultiConnectionError when p's block has more than two ports.
std::optional<PortId> connected_peer(const Partition& partition, PortId p);
std::optional<PortId> connected_peer(const SwitchTopology& topology, const GateStates& gates,
                                     PortId p);

std::string to_string(const Partition& partition);

}  // namespace prouter
