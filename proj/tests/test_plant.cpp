#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "prouter/errors.hpp"
#include "prouter/plant.hpp"

using namespace prouter;

namespace {

constexpr double kFs = 12000.0;
constexpr double kDt = 1.0 / kFs;

BatteryState battery(double p_act, double p_ref) {
  BatteryState b;
  b.p_act = p_act;
  b.p_ref = p_ref;
  b.lagged_ref = p_ref;
  return b;
}

Partition partition_13() { return {{PortId(1), PortId(3)}, {PortId(2)}, {PortId(4)}}; }

}  // namespace

TEST_CASE("grid voltage") {
  const GridSource g;
  CHECK(grid_voltage(g, 0.0) == 0.0);
  CHECK(grid_voltage(g, 1.0 / 240.0) == doctest::Approx(200.0 * std::numbers::sqrt2));
  CHECK(grid_voltage(g, 3.0 / 240.0) == doctest::Approx(-200.0 * std::numbers::sqrt2));
  CHECK(grid_voltage({230.0, 50.0, std::numbers::pi / 2}, 0.0) ==
        doctest::Approx(230.0 * std::numbers::sqrt2));
}

TEST_CASE("slew-limited reversal crosses zero after p/slew seconds") {
  auto b = battery(700.0, -700.0);
  const std::size_t crossing = static_cast<std::size_t>(std::llround(700.0 / 720.0 * kFs));
  std::size_t k = 0;
  while (b.p_act > 0.0) {
    b = battery_step(b, kDt);
    ++k;
  }
  CHECK(std::abs(static_cast<long>(k) - static_cast<long>(crossing)) <= 1);

  // 0.1 s into a ramp from zero: 720 * 0.1.
  auto c = battery(0.0, -700.0);
  for (int n = 0; n < 1200; ++n) c = battery_step(c, kDt);
  CHECK(c.p_act == doctest::Approx(-72.0).epsilon(1e-9));

  auto d = battery(300.0, 300.0);
  d = battery_step(d, kDt);
  CHECK(d.p_act == 300.0);

  CHECK_THROWS_AS(battery_step(d, 0.0), std::invalid_argument);
}

TEST_CASE("battery power never moves faster than the slew limit") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ref(-3000.0, 3000.0);
  std::uniform_real_distribution<double> slew(50.0, 5000.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto b = battery(ref(rng), ref(rng));
    b.slew = slew(rng);
    for (int k = 0; k < 2000; ++k) {
      if (k % 400 == 0) b.p_ref = ref(rng);
      const auto next = battery_step(b, kDt);
      CHECK(std::fabs(next.p_act - b.p_act) <= b.slew * kDt * (1.0 + 1e-9));
      b = next;
    }
  }
}

TEST_CASE("state of charge integrates the held power") {
  auto b = battery(700.0, -700.0);
  const double soc0 = b.soc;
  long double energy_ws = 0.0L;
  for (int k = 0; k < 24000; ++k) {
    energy_ws += static_cast<long double>(b.p_act) * kDt;
    b = battery_step(b, kDt);
  }
  const double expected = soc0 + static_cast<double>(energy_ws) / (6500.0 * 3600.0);
  CHECK(b.soc == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("saturation keeps state of charge inside [0, 1]") {
  auto full = battery(5000.0, 5000.0);
  full.capacity_wh = 0.01;
  full.soc = 0.99;
  for (int k = 0; k < 10000; ++k) {
    full = battery_step(full, kDt);
    REQUIRE(full.soc <= 1.0);
  }
  CHECK(full.soc == doctest::Approx(1.0));
  CHECK(full.p_act == doctest::Approx(0.0).epsilon(1e-6));

  auto empty = battery(-5000.0, -5000.0);
  empty.capacity_wh = 0.01;
  empty.soc = 0.01;
  for (int k = 0; k < 10000; ++k) {
    empty = battery_step(empty, kDt);
    REQUIRE(empty.soc >= 0.0);
  }
  CHECK(empty.soc == doctest::Approx(0.0));
}

TEST_CASE("first-order lag follows the analytic exponential") {
  auto b = battery(0.0, 0.0);
  b.slew = 1e12;
  b.lag_tau = 0.05;
  b.lagged_ref = 0.0;
  b.p_ref = 1000.0;
  for (int k = 1; k <= 6000; ++k) {
    b = battery_step(b, kDt);
    const double t = k * kDt;
    const double expected = 1000.0 * (1.0 - std::exp(-t / 0.05));
    REQUIRE(b.p_act == doctest::Approx(expected).epsilon(1e-9).scale(1000.0));
  }
}

TEST_CASE("battery current averages to minus the battery power over a line period") {
  const GridSource g;
  for (double p : {700.0, -700.0, 0.0}) {
    const auto b = battery(p, p);
    double acc = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double t = 0.3 + k * kDt;
      acc += grid_voltage(g, t) * battery_current(b, g, t);
    }
    CHECK(acc / 200.0 == doctest::Approx(-p).epsilon(1e-12).scale(700.0));
  }
}

TEST_CASE("port flows") {
  const GridSource g;
  const std::vector<HouseNet> houses{{PortId(1), 700.0}, {PortId(2), 0.0}};
  const auto b = battery(700.0, 700.0);
  const double t = 1.0 / 240.0;

  const auto f = port_flows(partition_13(), houses, PortId(3), b, g, t);
  for (const auto& port : f) CHECK(port.v == grid_voltage(g, t));
  CHECK(f[2].i == doctest::Approx(-std::numbers::sqrt2 * 3.5));
  CHECK(f[0].i == -f[2].i);
  CHECK(f[1].i == 0.0);
  CHECK(f[3].i == 0.0);

  // Isolated battery: no current anywhere.
  const Partition isolated{{PortId(1)}, {PortId(2)}, {PortId(3)}, {PortId(4)}};
  for (const auto& port : port_flows(isolated, houses, PortId(3), b, g, t)) CHECK(port.i == 0.0);

  // Battery paired with a port that has no house: open circuit.
  const Partition to_empty{{PortId(1)}, {PortId(2)}, {PortId(3), PortId(4)}};
  for (const auto& port : port_flows(to_empty, houses, PortId(3), b, g, t)) CHECK(port.i == 0.0);

  const Partition three{{PortId(1), PortId(2), PortId(3)}, {PortId(4)}};
  CHECK_THROWS_AS(port_flows(three, houses, PortId(3), b, g, t), MultiConnectionError);
}

TEST_CASE("connected ports balance power exactly") {
  const GridSource g;
  const std::vector<HouseNet> houses{{PortId(1), 0.0}};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> p(-2000.0, 2000.0);
  std::uniform_real_distribution<double> t(0.0, 4.0);
  for (int k = 0; k < 1000; ++k) {
    const auto f = port_flows(partition_13(), houses, PortId(3), battery(p(rng), 0.0), g, t(rng));
    CHECK(f[0].v * f[0].i + f[2].v * f[2].i == 0.0);
  }
}
