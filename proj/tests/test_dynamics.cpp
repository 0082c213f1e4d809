#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "atype/dynamics.hpp"
#include "test_util.hpp"

using namespace atype;
using testutil::period_two_pair;
using testutil::pure_machine;

TEST_CASE("change_fraction on hand-checkable machines") {
  SUBCASE("self-inverting singleton flips every cycle") {
    const Machine m = pure_machine({{0, 0, 0, BoolFn::Nand}});
    const std::vector<uint8_t> init{0};
    const auto series = change_fraction(m, init, 12);
    REQUIRE(series.mean.size() == 12);
    for (double f : series.mean) CHECK(f == 1.0);
  }
  SUBCASE("fixed point never changes") {
    // OR self-loops hold any state.
    const Machine m = pure_machine({{0, 0, 1, BoolFn::Or}, {1, 1, 0, BoolFn::Or}});
    const std::vector<uint8_t> init{1, 0};
    const auto series = change_fraction(m, init, 10);
    for (double f : series.mean) CHECK(f == 0.0);
  }
  SUBCASE("the period-2 pair changes every node every cycle") {
    const std::vector<uint8_t> init{0, 0};
    const auto series = change_fraction(period_two_pair(), init, 10);
    for (double f : series.mean) CHECK(f == 1.0);
  }
  SUBCASE("task machines are rejected") {
    Machine m = period_two_pair();
    m.mode = MachineMode::Task;
    m.num_inputs = 0;
    m.num_outputs = 0;
    const std::vector<uint8_t> init{0, 0};
    CHECK_THROWS_AS(change_fraction(m, init, 5), std::invalid_argument);
  }
}

TEST_CASE("aggregate_dynamics") {
  SUBCASE("a single trial collapses mean to min and max") {
    Rng rng(3);
    const auto series = aggregate_dynamics(10, 1, 20, rng);
    CHECK(series.trials == 1);
    for (size_t t = 0; t < series.mean.size(); ++t) {
      CHECK(series.mean[t] == series.min[t]);
      CHECK(series.mean[t] == series.max[t]);
    }
  }
  SUBCASE("min <= mean <= max per cycle") {
    Rng rng(4);
    const auto series = aggregate_dynamics(20, 25, 30, rng);
    for (size_t t = 0; t < series.mean.size(); ++t) {
      CHECK(series.min[t] <= series.mean[t]);
      CHECK(series.mean[t] <= series.max[t]);
      CHECK(series.min[t] >= 0.0);
      CHECK(series.max[t] <= 1.0);
    }
  }
  SUBCASE("csv has the fixed header and one row per cycle") {
    Rng rng(5);
    const auto series = aggregate_dynamics(8, 3, 4, rng);
    const std::string csv = dynamics_to_csv(series);
    CHECK(csv.rfind("cycle,mean,min,max\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  }
}

TEST_CASE("find_attractor") {
  SUBCASE("period-2 pair has no transient") {
    const auto report = find_attractor(period_two_pair(), {}, 100);
    REQUIRE(report.found);
    CHECK(report.transient_length == 0);
    CHECK(report.period == 2);
    CHECK(report.states_on_cycle == 2);
  }
  SUBCASE("all-holding machine is a fixed point") {
    const Machine m = pure_machine({{0, 0, 1, BoolFn::Or}, {1, 1, 0, BoolFn::Or}});
    const auto report = find_attractor(m, {}, 10);
    REQUIRE(report.found);
    CHECK(report.period == 1);
  }
  SUBCASE("any 4-node machine is caught within 16 steps") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
      const Machine m = random_pure_machine(4, FunctionSet::all_six(), rng);
      const auto report = find_attractor(m, {}, 16);
      CHECK(report.found);
    }
  }
  SUBCASE("budget exhaustion reports not-found instead of failing") {
    const auto report = find_attractor(period_two_pair(), {}, 1);
    CHECK(!report.found);
  }
}

TEST_CASE("replaying the period returns to the first cycle state") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + rng.below_int(7);
    const Machine m = random_pure_machine(n, FunctionSet::all_six(), rng);
    const int bound = 1 << n;
    const auto report = find_attractor(m, {}, bound);
    REQUIRE(report.found);
    CHECK(report.transient_length + report.period <= bound);

    MachineState s = reset(m);
    for (int t = 0; t < report.transient_length; ++t) step(m, s, {});
    const auto on_cycle = s.states;
    for (int t = 0; t < report.period; ++t) step(m, s, {});
    CHECK(s.states == on_cycle);
  }
}

TEST_CASE("series recomputed from a trace matches the report") {
  Rng rng(8);
  const Machine m = random_pure_machine(15, FunctionSet::nand_only(), rng);
  std::vector<uint8_t> init(15);
  for (auto& b : init) b = rng.bit();
  const int cycles = 25;
  const auto series = change_fraction(m, init, cycles);

  MachineState s = reset_to(m, init);
  std::vector<uint8_t> prev = s.states;
  for (int t = 0; t < cycles; ++t) {
    step(m, s, {});
    int changed = 0;
    for (size_t i = 0; i < prev.size(); ++i) changed += s.states[i] != prev[i];
    CHECK(series.mean[static_cast<size_t>(t)] ==
          doctest::Approx(static_cast<double>(changed) / 15.0));
    prev = s.states;
  }
}
