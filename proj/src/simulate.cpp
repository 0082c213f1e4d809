#include "atype/simulate.hpp"

#include <cstdlib>
#include <stdexcept>

namespace atype {

namespace {

std::vector<uint8_t> start_vector(const Machine& m) {
  std::vector<uint8_t> s(static_cast<size_t>(m.size()));
  for (int i = 0; i < m.size(); ++i)
    s[static_cast<size_t>(i)] = m.genes[static_cast<size_t>(i)].start;
  if (m.mode == MachineMode::Task) {
    s[static_cast<size_t>(m.const_true())] = 1;
    s[static_cast<size_t>(m.const_false())] = 0;
  }
  return s;
}

void check_inputs(const Machine& m, std::span<const uint8_t> inputs) {
  if (static_cast<int>(inputs.size()) != m.num_inputs)
    throw std::invalid_argument("step: expected " +
                                std::to_string(m.num_inputs) +
                                " input bits, got " +
                                std::to_string(inputs.size()));
}

void record(MachineState& s) {
  if (s.depth == 0) return;
  const size_t n = s.states.size();
  std::copy(s.states.begin(), s.states.end(),
            s.ring.begin() + static_cast<size_t>(s.time % s.depth) * n);
}

}  // namespace

MachineState reset(const Machine& m) {
  MachineState s;
  s.states = start_vector(m);
  s.initial = s.states;
  s.time = 0;
  return s;
}

MachineState reset_with_history(const Machine& m) {
  MachineState s = reset(m);
  s.depth = m.size();  // max index distance is size-1
  s.ring.resize(static_cast<size_t>(s.depth) * s.states.size());
  for (int t = 0; t < s.depth; ++t) {
    std::copy(s.states.begin(), s.states.end(),
              s.ring.begin() + static_cast<size_t>(t) * s.states.size());
  }
  return s;
}

MachineState reset_to(const Machine& m, std::span<const uint8_t> states,
                      bool with_history) {
  if (static_cast<int>(states.size()) != m.size())
    throw std::invalid_argument("reset_to: state length mismatch");
  MachineState s;
  s.states.assign(states.begin(), states.end());
  if (m.mode == MachineMode::Task) {
    s.states[static_cast<size_t>(m.const_true())] = 1;
    s.states[static_cast<size_t>(m.const_false())] = 0;
  }
  s.initial = s.states;
  s.time = 0;
  if (with_history) {
    s.depth = m.size();
    s.ring.resize(static_cast<size_t>(s.depth) * s.states.size());
    for (int t = 0; t < s.depth; ++t)
      std::copy(s.states.begin(), s.states.end(),
                s.ring.begin() + static_cast<size_t>(t) * s.states.size());
  }
  return s;
}

void step(const Machine& m, MachineState& s, std::span<const uint8_t> inputs,
          InputMode mode) {
  check_inputs(m, inputs);
  const int n = m.size();
  std::vector<uint8_t> next(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const NodeGene& g = m.genes[static_cast<size_t>(r)];
    if (m.is_constant(r)) {
      next[static_cast<size_t>(r)] = s.states[static_cast<size_t>(r)];
      continue;
    }
    if (m.is_input(r) && mode == InputMode::ClampState) {
      next[static_cast<size_t>(r)] = inputs[static_cast<size_t>(r)];
      continue;
    }
    const uint8_t a = m.is_input(r) ? inputs[static_cast<size_t>(r)]
                                    : s.states[static_cast<size_t>(g.in1)];
    const uint8_t b = s.states[static_cast<size_t>(g.in2)];
    next[static_cast<size_t>(r)] = eval_fn(g.fn, a, b);
  }
  s.states = std::move(next);
  s.time += 1;
  record(s);
}

void step_delayed(const Machine& m, MachineState& s,
                  std::span<const uint8_t> inputs, InputMode mode) {
  check_inputs(m, inputs);
  if (s.depth < m.size())
    throw std::invalid_argument("step_delayed: history depth too shallow");
  const int n = m.size();
  const int t = s.time;
  std::vector<uint8_t> next(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const NodeGene& g = m.genes[static_cast<size_t>(r)];
    if (m.is_constant(r)) {
      next[static_cast<size_t>(r)] = s.states[static_cast<size_t>(r)];
      continue;
    }
    if (m.is_input(r) && mode == InputMode::ClampState) {
      next[static_cast<size_t>(r)] = inputs[static_cast<size_t>(r)];
      continue;
    }
    const uint8_t a = m.is_input(r)
                          ? inputs[static_cast<size_t>(r)]
                          : s.past(g.in1, t - std::abs(r - g.in1));
    const uint8_t b = s.past(g.in2, t - std::abs(r - g.in2));
    next[static_cast<size_t>(r)] = eval_fn(g.fn, a, b);
  }
  s.states = std::move(next);
  s.time += 1;
  record(s);
}

RunResult run(const Machine& m, std::span<const uint8_t> inputs, int cycles,
              bool delayed, InputMode mode) {
  if (m.mode != MachineMode::Task)
    throw std::invalid_argument("run: task-mode machine required");
  if (cycles < 1) throw std::invalid_argument("run: cycles must be >= 1");
  MachineState s = delayed ? reset_with_history(m) : reset(m);
  RunResult result;
  result.trace.reserve(static_cast<size_t>(cycles) + 1);
  result.trace.push_back(s.states);
  for (int c = 0; c < cycles; ++c) {
    if (delayed)
      step_delayed(m, s, inputs, mode);
    else
      step(m, s, inputs, mode);
    result.trace.push_back(s.states);
  }
  result.outputs.resize(static_cast<size_t>(m.num_outputs));
  for (int k = 0; k < m.num_outputs; ++k)
    result.outputs[static_cast<size_t>(k)] =
        s.states[static_cast<size_t>(m.output_node(k))];
  return result;
}

}  // namespace atype
