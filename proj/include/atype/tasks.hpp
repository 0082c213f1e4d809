#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atype/machine.hpp"
#include "atype/simulate.hpp"

namespace atype {

struct Presentation {
  std::vector<uint8_t> inputs;
  std::vector<uint8_t> expected;
};

enum class TaskKind : uint8_t { Combinational, Sequential };

/// A benchmark task. Combinational tasks enumerate all 2^I input
/// vectors in ascending binary order (first listed bit most
/// significant); the sequential task is a fixed episode presented in
/// order. The optimum equals the presentation count.
struct TaskSpec {
  std::string name;
  int num_inputs = 0;
  int num_outputs = 0;
  TaskKind kind = TaskKind::Combinational;
  std::vector<Presentation> presentations;

  int optimum() const { return static_cast<int>(presentations.size()); }
};

/// k-address multiplexer. Input is (a_{k-1},..,a_0, d_0,..,d_{2^k-1});
/// the address value v = sum a_j 2^j selects output d_v.
uint8_t mux_expected(int k, std::span<const uint8_t> input);

/// k-address demultiplexer. Input is (a_{k-1},..,a_0, d); output line v
/// carries d, every other line 0.
std::vector<uint8_t> demux_expected(int k, std::span<const uint8_t> input);

/// Two 2-bit operands (a1,a0,b1,b0) to their 3-bit sum (s2,s1,s0).
std::vector<uint8_t> adder_expected(std::span<const uint8_t> input);

/// The JK episode: set (1,0), hold (0,0), toggle (1,1), reset (0,1),
/// expecting Q = 1,1,0,0. The machine is reset only before the first
/// presentation; later presentations continue from the current state.
std::vector<Presentation> jk_episode();

/// Names accepted everywhere: mux6, add2, demux, jk.
const std::vector<std::string>& task_names();
std::optional<TaskSpec> try_make_task(std::string_view name);
TaskSpec make_task(std::string_view name);  // throws std::invalid_argument

struct FitnessReport {
  int fitness = 0;
  std::vector<uint8_t> passed;  // one flag per presentation
  int solution_size = 0;
};

/// The evaluation protocol: per presentation, reset the machine, hold
/// the input for the cycle budget (15, or 50 when delayed), then score
/// +1 iff every output bit matches. The sequential task resets once and
/// runs the episode without intermediate resets. `cycles_override`
/// replaces the default budget when positive. Throws
/// std::invalid_argument if the machine interface does not match.
FitnessReport evaluate_fitness(const Machine& m, const TaskSpec& task,
                               bool delayed,
                               InputMode mode = InputMode::FirstConnection,
                               int cycles_override = 0);

/// Word-parallel evaluator for combinational tasks: each node holds one
/// 64-bit word whose bit p is the node's state under presentation p, so
/// all presentations advance in one pass. Scores identically to
/// evaluate_fitness. Reusable; keeps scratch between calls.
class PackedEvaluator {
 public:
  PackedEvaluator(const TaskSpec& task, bool delayed,
                  InputMode mode = InputMode::FirstConnection,
                  int cycles_override = 0);

  FitnessReport evaluate(const Machine& m);

  int cycles() const { return cycles_; }

 private:
  int num_inputs_;
  int num_outputs_;
  int cycles_;
  bool delayed_;
  InputMode mode_;
  int presentations_;
  uint64_t mask_;
  std::vector<uint64_t> input_words_;     // per input node
  std::vector<uint64_t> expected_words_;  // per output
  std::vector<uint64_t> cur_, next_, initial_, ring_;
};

}  // namespace atype
