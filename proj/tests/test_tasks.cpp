#include "doctest.h"

#include <algorithm>

#include "atype/tasks.hpp"
#include "test_util.hpp"

using namespace atype;
using testutil::task_machine;

TEST_CASE("multiplexer oracle") {
  const std::vector<uint8_t> a{0, 1, 0, 1, 0, 0};
  CHECK(mux_expected(2, a) == 1);  // address 01 -> d1
  const std::vector<uint8_t> b{0, 0, 1, 0, 0, 0};
  CHECK(mux_expected(2, b) == 1);  // address 00 -> d0
  const std::vector<uint8_t> zeros(6, 0);
  CHECK(mux_expected(2, zeros) == 0);
  const std::vector<uint8_t> wrong(5, 0);
  CHECK_THROWS_AS(mux_expected(2, wrong), std::invalid_argument);

  // Exhaustive against independent arithmetic: build each row from the
  // integer p, select with shifts only.
  for (int p = 0; p < 64; ++p) {
    std::vector<uint8_t> in(6);
    for (int i = 0; i < 6; ++i) in[i] = (p >> (5 - i)) & 1;
    const int address = (p >> 4) & 3;
    const int data = p & 15;
    const uint8_t expect = (data >> (3 - address)) & 1;
    CHECK(mux_expected(2, in) == expect);
  }
}

TEST_CASE("demultiplexer oracle") {
  const std::vector<uint8_t> a{1, 0, 1};
  CHECK(demux_expected(2, a) == std::vector<uint8_t>{0, 0, 1, 0});
  const std::vector<uint8_t> b{0, 0, 0};
  CHECK(demux_expected(2, b) == std::vector<uint8_t>{0, 0, 0, 0});
  const std::vector<uint8_t> c{1, 1, 1};
  CHECK(demux_expected(2, c) == std::vector<uint8_t>{0, 0, 0, 1});
  const std::vector<uint8_t> wrong{1, 1};
  CHECK_THROWS_AS(demux_expected(2, wrong), std::invalid_argument);

  for (int p = 0; p < 8; ++p) {
    const std::vector<uint8_t> in{static_cast<uint8_t>((p >> 2) & 1),
                                  static_cast<uint8_t>((p >> 1) & 1),
                                  static_cast<uint8_t>(p & 1)};
    const auto out = demux_expected(2, in);
    int ones = 0;
    for (size_t line = 0; line < out.size(); ++line) {
      ones += out[line];
      const bool addressed = static_cast<int>(line) == (p >> 1);
      CHECK(out[line] == (addressed ? (p & 1) : 0));
    }
    CHECK(ones == (p & 1));
  }
}

TEST_CASE("adder oracle") {
  const std::vector<uint8_t> a{1, 1, 0, 1};
  CHECK(adder_expected(a) == std::vector<uint8_t>{1, 0, 0});  // 3+1=4
  const std::vector<uint8_t> b{0, 0, 0, 0};
  CHECK(adder_expected(b) == std::vector<uint8_t>{0, 0, 0});
  const std::vector<uint8_t> c{1, 1, 1, 1};
  CHECK(adder_expected(c) == std::vector<uint8_t>{1, 1, 0});  // 3+3=6
  const std::vector<uint8_t> wrong{1, 1, 1};
  CHECK_THROWS_AS(adder_expected(wrong), std::invalid_argument);

  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const std::vector<uint8_t> in{static_cast<uint8_t>(x >> 1),
                                    static_cast<uint8_t>(x & 1),
                                    static_cast<uint8_t>(y >> 1),
                                    static_cast<uint8_t>(y & 1)};
      const auto out = adder_expected(in);
      CHECK(4 * out[0] + 2 * out[1] + out[2] == x + y);
    }
}

TEST_CASE("JK episode is set, hold, toggle, reset") {
  const auto episode = jk_episode();
  REQUIRE(episode.size() == 4);
  CHECK(episode[0].inputs == std::vector<uint8_t>{1, 0});
  CHECK(episode[0].expected == std::vector<uint8_t>{1});
  CHECK(episode[1].inputs == std::vector<uint8_t>{0, 0});
  CHECK(episode[1].expected == std::vector<uint8_t>{1});
  CHECK(episode[2].inputs == std::vector<uint8_t>{1, 1});
  CHECK(episode[2].expected == std::vector<uint8_t>{0});
  CHECK(episode[3].inputs == std::vector<uint8_t>{0, 1});
  CHECK(episode[3].expected == std::vector<uint8_t>{0});

  // Each input pair appears exactly once, and the expectations follow
  // latch semantics from Q=0: J=1,K=0 sets; 0,0 holds; 1,1 toggles;
  // 0,1 resets.
  uint8_t q = 0;
  for (const Presentation& p : episode) {
    const uint8_t j = p.inputs[0], k = p.inputs[1];
    if (j && !k) q = 1;
    else if (!j && k) q = 0;
    else if (j && k) q = static_cast<uint8_t>(1 - q);
    CHECK(p.expected[0] == q);
  }
}

TEST_CASE("task construction") {
  const TaskSpec mux = make_task("mux6");
  CHECK(mux.num_inputs == 6);
  CHECK(mux.num_outputs == 1);
  CHECK(mux.optimum() == 64);
  const TaskSpec add = make_task("add2");
  CHECK(add.num_inputs == 4);
  CHECK(add.num_outputs == 3);
  CHECK(add.optimum() == 16);
  const TaskSpec demux = make_task("demux");
  CHECK(demux.num_inputs == 3);
  CHECK(demux.num_outputs == 4);
  CHECK(demux.optimum() == 8);
  const TaskSpec jk = make_task("jk");
  CHECK(jk.num_inputs == 2);
  CHECK(jk.num_outputs == 1);
  CHECK(jk.optimum() == 4);
  CHECK(jk.kind == TaskKind::Sequential);
  CHECK_THROWS_AS(make_task("mux11"), std::invalid_argument);

  // Every combinational task enumerates all 2^I inputs exactly once,
  // in ascending binary order.
  for (const char* name : {"mux6", "add2", "demux"}) {
    const TaskSpec task = make_task(name);
    CHECK(static_cast<int>(task.presentations.size()) == 1 << task.num_inputs);
    for (size_t p = 0; p < task.presentations.size(); ++p) {
      int value = 0;
      for (uint8_t bit : task.presentations[p].inputs) value = 2 * value + bit;
      CHECK(value == static_cast<int>(p));
    }
  }
}

namespace {

// The evaluation protocol restated with the scalar simulator, used to
// pin the packed evaluator.
int protocol_fitness(const Machine& m, const TaskSpec& task, bool delayed,
                     int cycles) {
  int fitness = 0;
  if (task.kind == TaskKind::Combinational) {
    for (const Presentation& pres : task.presentations) {
      const RunResult r = run(m, pres.inputs, cycles, delayed);
      fitness += r.outputs == pres.expected;
    }
    return fitness;
  }
  MachineState s = delayed ? reset_with_history(m) : reset(m);
  for (const Presentation& pres : task.presentations) {
    for (int c = 0; c < cycles; ++c) {
      if (delayed)
        step_delayed(m, s, pres.inputs);
      else
        step(m, s, pres.inputs);
    }
    bool pass = true;
    for (int k = 0; k < m.num_outputs; ++k)
      pass &= s.states[static_cast<size_t>(m.output_node(k))] ==
              pres.expected[static_cast<size_t>(k)];
    fitness += pass;
  }
  return fitness;
}

Machine constant_one_machine(const TaskSpec& task) {
  // Every output NANDs the constant-False line with itself.
  Machine m;
  m.mode = MachineMode::Task;
  m.num_inputs = task.num_inputs;
  m.num_outputs = task.num_outputs;
  m.genes.assign(static_cast<size_t>(m.min_size()),
                 NodeGene{0, 0, 0, BoolFn::Nand});
  for (int k = 0; k < m.num_outputs; ++k)
    m.genes[static_cast<size_t>(m.output_node(k))] = {m.const_false(),
                                                      m.const_false(), 0,
                                                      BoolFn::Nand};
  return m;
}

}  // namespace

TEST_CASE("constant-1 output scores the truth-table count of ones") {
  const TaskSpec mux = make_task("mux6");
  int expected_ones = 0;
  for (const Presentation& p : mux.presentations)
    expected_ones += p.expected[0] == 1;
  CHECK(expected_ones == 32);

  const FitnessReport report = evaluate_fitness(constant_one_machine(mux), mux, false);
  CHECK(report.fitness == 32);
  CHECK(report.solution_size == 9);

  // A double-NAND buffer from the constant-True line scores the same.
  Machine buffered = constant_one_machine(mux);
  buffered.genes.push_back({buffered.const_true(), buffered.const_true(), 0,
                            BoolFn::Nand});
  buffered.genes[static_cast<size_t>(buffered.output_node(0))] = {9, 9, 0,
                                                                  BoolFn::Nand};
  CHECK(evaluate_fitness(buffered, mux, false).fitness == 32);
}

TEST_CASE("constant-1 output on the JK episode scores the held-set half") {
  const TaskSpec jk = make_task("jk");
  const FitnessReport report =
      evaluate_fitness(constant_one_machine(jk), jk, false);
  CHECK(report.fitness == 2);
  CHECK(report.passed == std::vector<uint8_t>{1, 1, 0, 0});
}

TEST_CASE("interface mismatch is an error") {
  Rng rng(19);
  const Machine m = random_machine(3, 1, 5, FunctionSet::nand_only(), rng);
  CHECK_THROWS_AS(evaluate_fitness(m, make_task("mux6"), false),
                  std::invalid_argument);
}

TEST_CASE("packed evaluator matches the scalar protocol") {
  Rng rng(20);
  for (const char* name : {"mux6", "add2", "demux"}) {
    const TaskSpec task = make_task(name);
    for (bool delayed : {false, true}) {
      PackedEvaluator packed(task, delayed);
      for (int trial = 0; trial < 25; ++trial) {
        const FunctionSet fns =
            trial % 2 ? FunctionSet::all_six() : FunctionSet::nand_only();
        const Machine m = random_machine(task.num_inputs, task.num_outputs,
                                         rng.below_int(12), fns, rng);
        const FitnessReport fast = packed.evaluate(m);
        const int slow =
            protocol_fitness(m, task, delayed, default_cycles(delayed));
        CHECK(fast.fitness == slow);
        CHECK(fast.fitness <= task.optimum());
        int from_flags = 0;
        for (uint8_t ok : fast.passed) from_flags += ok;
        CHECK(from_flags == fast.fitness);
      }
    }
  }
}

TEST_CASE("sequential evaluation matches its protocol restatement") {
  Rng rng(21);
  const TaskSpec jk = make_task("jk");
  for (bool delayed : {false, true}) {
    for (int trial = 0; trial < 25; ++trial) {
      const Machine m = random_machine(2, 1, rng.below_int(12),
                                       FunctionSet::all_six(), rng);
      CHECK(evaluate_fitness(m, jk, delayed).fitness ==
            protocol_fitness(m, jk, delayed, default_cycles(delayed)));
    }
  }
}

TEST_CASE("combinational fitness ignores presentation order") {
  Rng rng(22);
  TaskSpec demux = make_task("demux");
  const Machine m = random_machine(3, 4, 8, FunctionSet::nand_only(), rng);
  const int before = evaluate_fitness(m, demux, false).fitness;
  std::reverse(demux.presentations.begin(), demux.presentations.end());
  CHECK(evaluate_fitness(m, demux, false).fitness == before);
}

TEST_CASE("self-connected machines score identically with delays at equal budget") {
  Rng rng(23);
  const TaskSpec demux = make_task("demux");
  for (int trial = 0; trial < 20; ++trial) {
    Machine m = random_machine(3, 4, rng.below_int(10),
                               FunctionSet::all_six(), rng);
    for (int i = 0; i < m.size(); ++i) {
      m.genes[static_cast<size_t>(i)].in1 = i;
      m.genes[static_cast<size_t>(i)].in2 = i;
    }
    const int instant = evaluate_fitness(m, demux, false).fitness;
    const int delayed =
        evaluate_fitness(m, demux, true, InputMode::FirstConnection,
                         kCyclesInstant)
            .fitness;
    CHECK(instant == delayed);
  }
}

TEST_CASE("fitness is deterministic") {
  Rng rng(24);
  const TaskSpec add = make_task("add2");
  const Machine m = random_machine(4, 3, 20, FunctionSet::all_six(), rng);
  const FitnessReport a = evaluate_fitness(m, add, true);
  const FitnessReport b = evaluate_fitness(m, add, true);
  CHECK(a.fitness == b.fitness);
  CHECK(a.passed == b.passed);
}
