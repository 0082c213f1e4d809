#pragma once

#include <span>
#include <string>
#include <vector>

#include "atype/machine.hpp"
#include "atype/simulate.hpp"

namespace atype {

/// Per-cycle fraction of nodes whose state differs from the previous
/// cycle, aggregated over trials. Entry t-1 covers cycle t (1-based);
/// for a single trial mean == min == max.
struct ChangeFractionSeries {
  int trials = 0;
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
};

/// One trial on a pure machine with the instantaneous simulator.
/// Throws std::invalid_argument for task-mode machines or cycles < 1.
ChangeFractionSeries change_fraction(const Machine& m,
                                     std::span<const uint8_t> initial,
                                     int cycles);

/// `trials` random pure machines of `num_nodes` nodes, each from a
/// random initial configuration; per-cycle mean/min/max across trials.
/// Each trial owns an RNG stream derived from `rng`, so the result does
/// not depend on trial execution order.
ChangeFractionSeries aggregate_dynamics(int num_nodes, int trials, int cycles,
                                        Rng& rng,
                                        const FunctionSet& fns = FunctionSet::nand_only());

/// Header `cycle,mean,min,max`, one row per cycle, 6 decimal places.
std::string dynamics_to_csv(const ChangeFractionSeries& series);

struct AttractorReport {
  bool found = false;  // false: no repeat within max_steps
  int transient_length = 0;
  int period = 0;
  int states_on_cycle = 0;
};

/// Walks the trajectory from reset under constant `inputs` until a state
/// vector repeats (visited-state map, instantaneous simulator).
AttractorReport find_attractor(const Machine& m, std::span<const uint8_t> inputs,
                               int max_steps);

/// As find_attractor, from an explicit initial state.
AttractorReport find_attractor_from(const Machine& m,
                                    std::span<const uint8_t> initial,
                                    std::span<const uint8_t> inputs,
                                    int max_steps);

}  // namespace atype
