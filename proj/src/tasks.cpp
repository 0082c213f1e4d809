#include "atype/tasks.hpp"

#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace atype {

namespace {

void check_length(std::span<const uint8_t> input, size_t expected,
                  const char* what) {
  if (input.size() != expected)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(expected) + " input bits, got " +
                                std::to_string(input.size()));
}

int address_value(int k, std::span<const uint8_t> input) {
  // Address bits are listed most-significant-first: a_{k-1} .. a_0.
  int v = 0;
  for (int j = 0; j < k; ++j)
    v |= input[static_cast<size_t>(j)] << (k - 1 - j);
  return v;
}

// Ascending binary enumeration; first listed bit is most significant.
std::vector<uint8_t> input_vector(int num_inputs, int p) {
  std::vector<uint8_t> bits(static_cast<size_t>(num_inputs));
  for (int i = 0; i < num_inputs; ++i)
    bits[static_cast<size_t>(i)] =
        static_cast<uint8_t>((p >> (num_inputs - 1 - i)) & 1);
  return bits;
}

template <typename Oracle>
TaskSpec combinational_task(std::string name, int num_inputs, Oracle oracle) {
  TaskSpec task;
  task.name = std::move(name);
  task.num_inputs = num_inputs;
  task.kind = TaskKind::Combinational;
  for (int p = 0; p < (1 << num_inputs); ++p) {
    Presentation pres;
    pres.inputs = input_vector(num_inputs, p);
    pres.expected = oracle(pres.inputs);
    task.presentations.push_back(std::move(pres));
  }
  task.num_outputs = static_cast<int>(task.presentations.front().expected.size());
  return task;
}

}  // namespace

uint8_t mux_expected(int k, std::span<const uint8_t> input) {
  check_length(input, static_cast<size_t>(k) + (1u << k), "mux_expected");
  return input[static_cast<size_t>(k + address_value(k, input))];
}

std::vector<uint8_t> demux_expected(int k, std::span<const uint8_t> input) {
  check_length(input, static_cast<size_t>(k) + 1, "demux_expected");
  std::vector<uint8_t> out(1u << k, 0);
  out[static_cast<size_t>(address_value(k, input))] = input[static_cast<size_t>(k)];
  return out;
}

std::vector<uint8_t> adder_expected(std::span<const uint8_t> input) {
  check_length(input, 4, "adder_expected");
  const int sum = (2 * input[0] + input[1]) + (2 * input[2] + input[3]);
  return {static_cast<uint8_t>((sum >> 2) & 1), static_cast<uint8_t>((sum >> 1) & 1),
          static_cast<uint8_t>(sum & 1)};
}

std::vector<Presentation> jk_episode() {
  return {{{1, 0}, {1}},   // set
          {{0, 0}, {1}},   // hold
          {{1, 1}, {0}},   // toggle
          {{0, 1}, {0}}};  // reset
}

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"mux6", "add2", "demux", "jk"};
  return names;
}

std::optional<TaskSpec> try_make_task(std::string_view name) {
  if (name == "mux6")
    return combinational_task("mux6", 6, [](std::span<const uint8_t> in) {
      return std::vector<uint8_t>{mux_expected(2, in)};
    });
  if (name == "add2")
    return combinational_task("add2", 4, [](std::span<const uint8_t> in) {
      return adder_expected(in);
    });
  if (name == "demux")
    return combinational_task("demux", 3, [](std::span<const uint8_t> in) {
      return demux_expected(2, in);
    });
  if (name == "jk") {
    TaskSpec task;
    task.name = "jk";
    task.num_inputs = 2;
    task.num_outputs = 1;
    task.kind = TaskKind::Sequential;
    task.presentations = jk_episode();
    return task;
  }
  return std::nullopt;
}

TaskSpec make_task(std::string_view name) {
  auto task = try_make_task(name);
  if (!task)
    throw std::invalid_argument("unknown task \"" + std::string(name) + "\"");
  return *task;
}

namespace {

void check_interface(const Machine& m, const TaskSpec& task) {
  if (m.mode != MachineMode::Task || m.num_inputs != task.num_inputs ||
      m.num_outputs != task.num_outputs)
    throw std::invalid_argument(
        "machine interface (" + std::to_string(m.num_inputs) + " in, " +
        std::to_string(m.num_outputs) + " out) does not match task " +
        task.name);
}

FitnessReport evaluate_sequential(const Machine& m, const TaskSpec& task,
                                  bool delayed, InputMode mode, int cycles) {
  FitnessReport report;
  report.solution_size = m.size();
  MachineState s = delayed ? reset_with_history(m) : reset(m);
  for (const Presentation& pres : task.presentations) {
    for (int c = 0; c < cycles; ++c) {
      if (delayed)
        step_delayed(m, s, pres.inputs, mode);
      else
        step(m, s, pres.inputs, mode);
    }
    bool pass = true;
    for (int k = 0; k < m.num_outputs; ++k)
      pass &= s.states[static_cast<size_t>(m.output_node(k))] ==
              pres.expected[static_cast<size_t>(k)];
    report.passed.push_back(pass);
    report.fitness += pass;
  }
  return report;
}

}  // namespace

PackedEvaluator::PackedEvaluator(const TaskSpec& task, bool delayed,
                                 InputMode mode, int cycles_override)
    : num_inputs_(task.num_inputs),
      num_outputs_(task.num_outputs),
      cycles_(cycles_override > 0 ? cycles_override : default_cycles(delayed)),
      delayed_(delayed),
      mode_(mode),
      presentations_(task.optimum()) {
  if (task.kind != TaskKind::Combinational)
    throw std::invalid_argument("PackedEvaluator: combinational task required");
  if (presentations_ > 64)
    throw std::invalid_argument("PackedEvaluator: more than 64 presentations");
  mask_ = presentations_ == 64 ? ~uint64_t{0}
                               : (uint64_t{1} << presentations_) - 1;
  input_words_.assign(static_cast<size_t>(num_inputs_), 0);
  expected_words_.assign(static_cast<size_t>(num_outputs_), 0);
  for (int p = 0; p < presentations_; ++p) {
    const Presentation& pres = task.presentations[static_cast<size_t>(p)];
    for (int i = 0; i < num_inputs_; ++i)
      input_words_[static_cast<size_t>(i)] |=
          static_cast<uint64_t>(pres.inputs[static_cast<size_t>(i)]) << p;
    for (int k = 0; k < num_outputs_; ++k)
      expected_words_[static_cast<size_t>(k)] |=
          static_cast<uint64_t>(pres.expected[static_cast<size_t>(k)]) << p;
  }
}

FitnessReport PackedEvaluator::evaluate(const Machine& m) {
  if (m.mode != MachineMode::Task || m.num_inputs != num_inputs_ ||
      m.num_outputs != num_outputs_)
    throw std::invalid_argument("PackedEvaluator: machine interface mismatch");

  const int n = m.size();
  const size_t un = static_cast<size_t>(n);
  cur_.assign(un, 0);
  for (int i = 0; i < n; ++i)
    cur_[static_cast<size_t>(i)] =
        m.genes[static_cast<size_t>(i)].start ? ~uint64_t{0} : 0;
  cur_[static_cast<size_t>(m.const_true())] = ~uint64_t{0};
  cur_[static_cast<size_t>(m.const_false())] = 0;
  next_.assign(un, 0);

  const int depth = delayed_ ? n : 0;
  if (delayed_) {
    initial_ = cur_;
    ring_.assign(static_cast<size_t>(depth) * un, 0);
    for (int t = 0; t < depth; ++t)
      std::copy(cur_.begin(), cur_.end(),
                ring_.begin() + static_cast<size_t>(t) * un);
  }

  // All-NAND machines skip function dispatch; the generic path covers
  // the full set. Both must agree bit-for-bit with the scalar stepper.
  bool all_nand = true;
  for (const NodeGene& g : m.genes) all_nand &= g.fn == BoolFn::Nand;

  for (int t = 0; t < cycles_; ++t) {
    for (int r = 0; r < n; ++r) {
      const NodeGene& g = m.genes[static_cast<size_t>(r)];
      if (m.is_constant(r)) {
        next_[static_cast<size_t>(r)] = cur_[static_cast<size_t>(r)];
        continue;
      }
      const bool input_node = m.is_input(r);
      if (input_node && mode_ == InputMode::ClampState) {
        next_[static_cast<size_t>(r)] = input_words_[static_cast<size_t>(r)];
        continue;
      }
      uint64_t a, b;
      if (delayed_) {
        const auto read = [&](int src) {
          const int tau = t - std::abs(r - src);
          return tau <= 0 ? initial_[static_cast<size_t>(src)]
                          : ring_[static_cast<size_t>(tau % depth) * un +
                                  static_cast<size_t>(src)];
        };
        a = input_node ? input_words_[static_cast<size_t>(r)] : read(g.in1);
        b = read(g.in2);
      } else {
        a = input_node ? input_words_[static_cast<size_t>(r)]
                       : cur_[static_cast<size_t>(g.in1)];
        b = cur_[static_cast<size_t>(g.in2)];
      }
      next_[static_cast<size_t>(r)] =
          all_nand ? ~(a & b) : eval_fn_word(g.fn, a, b);
    }
    cur_.swap(next_);
    if (delayed_)
      std::copy(cur_.begin(), cur_.end(),
                ring_.begin() + static_cast<size_t>((t + 1) % depth) * un);
  }

  uint64_t mismatch = 0;
  for (int k = 0; k < num_outputs_; ++k)
    mismatch |= cur_[static_cast<size_t>(m.output_node(k))] ^
                expected_words_[static_cast<size_t>(k)];
  const uint64_t passmask = ~mismatch & mask_;

  FitnessReport report;
  report.fitness = std::popcount(passmask);
  report.solution_size = n;
  report.passed.resize(static_cast<size_t>(presentations_));
  for (int p = 0; p < presentations_; ++p)
    report.passed[static_cast<size_t>(p)] =
        static_cast<uint8_t>((passmask >> p) & 1);
  return report;
}

FitnessReport evaluate_fitness(const Machine& m, const TaskSpec& task,
                               bool delayed, InputMode mode,
                               int cycles_override) {
  check_interface(m, task);
  const int cycles =
      cycles_override > 0 ? cycles_override : default_cycles(delayed);
  if (task.kind == TaskKind::Sequential)
    return evaluate_sequential(m, task, delayed, mode, cycles);
  PackedEvaluator eval(task, delayed, mode, cycles);
  return eval.evaluate(m);
}

}  // namespace atype
