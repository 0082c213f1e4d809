#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atype/machine.hpp"
#include "atype/simulate.hpp"
#include "atype/tasks.hpp"

namespace atype {

/// Search and simulation parameters for one imitation run.
struct IPConfig {
  int population_size = 20;
  int max_iterations = 1000;
  TaskSpec task;
  bool delayed = false;
  FunctionSet function_set = FunctionSet::nand_only();
  int initial_extra_nodes = 30;
  int max_size = kMaxMachineSize;
  uint64_t master_seed = 0;
  InputMode input_mode = InputMode::FirstConnection;
  /// RBN mode only: include the copy-function operator pair in the
  /// imitation menu. When off, functions stay as initialised.
  bool imitate_functions = true;
};

struct Individual {
  Machine machine;
  int fitness = 0;
};

struct IterationStats {
  int iteration = 0;
  int best_fitness = 0;
  double mean_fitness = 0.0;
  int best_size = 0;
};

/// Trajectory and outcome of one run. Entry 0 of the trajectory is the
/// freshly initialised population; best fitness never decreases.
struct RunRecord {
  std::vector<IterationStats> trajectory;
  std::optional<int> iterations_to_optimum;
  Machine best;
  int best_fitness = 0;
  uint64_t seed = 0;
};

/// Roulette-wheel choice among all indices except `self_index`
/// (pass -1 to allow every index), proportional to fitness; uniform
/// when the eligible fitnesses are all zero.
int select_model(std::span<const int> fitnesses, int self_index, Rng& rng);

/// A randomly chosen connection of a randomly chosen node takes the
/// model's value at the same position (the imitator's own value when
/// the node lies beyond the model); with error the copied value moves
/// to the next or previous node, bounded by the imitator's size.
void op_copy_connection(Machine& imitator, const Machine& model,
                        bool with_error, Rng& rng);

/// As above for one node's start state; error flips the copied bit.
void op_copy_start_state(Machine& imitator, const Machine& model,
                         bool with_error, Rng& rng);

/// Grows or shrinks the imitator by one node toward the model's size
/// (fair coin when equal). Growth appends a copy of a model gene and
/// rewires one randomly chosen existing connection to it; deletion cuts
/// the highest-index node and reassigns every dangling connection at
/// random. No-ops at `max_size` and at the reserved minimum. The error
/// flag perturbs copied connections on growth and is ignored on
/// deletion.
void op_resize(Machine& imitator, const Machine& model, bool with_error,
               int max_size, Rng& rng);

/// RBN-mode extension: copy the model's function at a random node;
/// error replaces the copy with a uniformly random different function
/// from `fns`.
void op_copy_function(Machine& imitator, const Machine& model, bool with_error,
                      const FunctionSet& fns, Rng& rng);

/// One imitation event: clone `self`, apply exactly one operator
/// variant chosen uniformly from the menu (six in A-type mode, eight in
/// RBN mode with imitate_functions). The result always validates.
Machine imitate(const Machine& self, const Machine& model,
                const IPConfig& config, Rng& rng);

/// Update rule: adopt the candidate iff it is fitter, or equally fit
/// and smaller; a full tie falls to a fair coin.
bool prefer_candidate(const Individual& incumbent, const Individual& candidate,
                      Rng& rng);

/// Full imitation-programming run: P random machines of size
/// I+O+2+initial_extra_nodes improve by imitation until the optimum or
/// the iteration budget. Variants are generated against the
/// iteration-start population and replacements applied at iteration
/// end; every stream is derived from (master_seed, iteration,
/// individual), so the record is a pure function of the config.
RunRecord run_ip(const IPConfig& config);

/// Header `iteration,best_fitness,mean_fitness,best_size`.
std::string run_record_to_csv(const RunRecord& record);

}  // namespace atype
