#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "atype/machine.hpp"

namespace atype {

/// How an external input bit enters its input node. FirstConnection
/// replaces the signal on the node's first terminal, so the node still
/// computes its function; ClampState forces the node's state directly.
enum class InputMode : uint8_t { FirstConnection, ClampState };

inline constexpr int kCyclesInstant = 15;
inline constexpr int kCyclesDelayed = 50;

inline int default_cycles(bool delayed) {
  return delayed ? kCyclesDelayed : kCyclesInstant;
}

/// Snapshot of a machine's node states at `time`, plus the bounded past
/// needed for delayed stepping. `initial` is the state at time 0 and is
/// what any read at time <= 0 returns. The ring holds the last `depth`
/// state vectors (slot t % depth is the state at time t); depth is 0
/// when history is not tracked.
struct MachineState {
  std::vector<uint8_t> states;
  int time = 0;
  std::vector<uint8_t> initial;
  int depth = 0;
  std::vector<uint8_t> ring;

  /// State of `node` at time `t`; valid for t in (time - depth, time]
  /// and any t <= 0.
  uint8_t past(int node, int t) const {
    if (t <= 0) return initial[static_cast<size_t>(node)];
    const size_t n = initial.size();
    return ring[static_cast<size_t>(t % depth) * n + static_cast<size_t>(node)];
  }
};

/// Every node takes its gene's start state; constants take their fixed
/// values. History (when tracked) reads the same vector at all t <= 0.
MachineState reset(const Machine& m);

/// As reset, with a history ring deep enough for any index-distance
/// delay the machine can express.
MachineState reset_with_history(const Machine& m);

/// Reset, then override the time-0 states (constants stay pinned).
/// Delay history, when tracked, reads the override at all t <= 0.
MachineState reset_to(const Machine& m, std::span<const uint8_t> states,
                      bool with_history = false);

/// One synchronous update: every non-constant node reads its sources at
/// the previous moment. In task mode, `inputs` (length I) feeds each
/// input node per `mode`; pure machines take an empty span. Throws
/// std::invalid_argument on input length mismatch.
void step(const Machine& m, MachineState& s, std::span<const uint8_t> inputs,
          InputMode mode = InputMode::FirstConnection);

/// One synchronous update where node r reads source node s at
/// `time - |r - s|` (start state before time 0). External inputs arrive
/// with zero delay. Requires a state from reset_with_history().
void step_delayed(const Machine& m, MachineState& s,
                  std::span<const uint8_t> inputs,
                  InputMode mode = InputMode::FirstConnection);

struct RunResult {
  std::vector<uint8_t> outputs;
  /// States at t = 0..cycles, trace[t] being the full state vector.
  std::vector<std::vector<uint8_t>> trace;
};

/// Task-mode evaluation: reset, hold `inputs` constant for `cycles`
/// updates, and report the output nodes' final states plus the trace.
RunResult run(const Machine& m, std::span<const uint8_t> inputs, int cycles,
              bool delayed, InputMode mode = InputMode::FirstConnection);

}  // namespace atype
