// Command-line front end: dynamics sweeps, imitation runs, single-machine
// simulation, fitness verification, and full experiment plans.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "atype/dynamics.hpp"
#include "atype/experiment.hpp"
#include "atype/imitation.hpp"
#include "atype/serialize.hpp"
#include "atype/tasks.hpp"

namespace fs = std::filesystem;
using namespace atype;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::vector<uint8_t> parse_bits(const std::string& text) {
  std::vector<uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw CLI::ValidationError("--input", "bits must be 0s and 1s");
    bits.push_back(c == '1');
  }
  return bits;
}

std::string bits_to_string(std::span<const uint8_t> bits) {
  std::string s;
  for (uint8_t b : bits) s += b ? '1' : '0';
  return s;
}

struct DynamicsArgs {
  std::vector<int> nodes = {16, 50, 100, 500};
  int trials = 100;
  int cycles = 40;
  uint64_t seed = 0;
  std::string out = ".";
};

int cmd_dynamics(const DynamicsArgs& args) {
  fs::create_directories(args.out);
  for (int n : args.nodes) {
    Rng rng = Rng::stream(args.seed, {hash_name("dynamics"), static_cast<uint64_t>(n)});
    const auto series = aggregate_dynamics(n, args.trials, args.cycles, rng);
    const fs::path path = fs::path(args.out) / ("dynamics_n" + std::to_string(n) + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << dynamics_to_csv(series);
    std::printf("N=%d: wrote %s (final-cycle mean change fraction %.4f)\n", n,
                path.string().c_str(), series.mean.back());
  }
  return kExitOk;
}

struct EvolveArgs {
  std::string task;
  int runs = 20;
  int iters = 0;  // 0: per-task default
  bool delay = false;
  std::string functions = "nand";
  int population = 20;
  uint64_t seed = 0;
  std::string out = ".";
};

int cmd_evolve(const EvolveArgs& args) {
  ExperimentPlan plan;
  plan.kind = ExperimentKind::Evolve;
  plan.tasks = {args.task};
  plan.runs = args.runs;
  plan.delay_axis = {args.delay};
  plan.function_axis = {args.functions == "all"};
  plan.population_size = args.population;
  plan.master_seed = args.seed;
  plan.output_dir = args.out;
  if (args.iters > 0) plan.budgets[args.task] = args.iters;

  const ExperimentSummary summary = run_experiment(plan);
  const CellSummary& cell = summary.cells.front();
  std::printf("cell %s: %d runs, budget %d\n", cell.cell.name().c_str(),
              cell.runs, cell.budget);
  std::printf("  reached optimum (%d): %.0f%% of runs (%d censored)\n",
              cell.optimum, 100.0 * cell.success_fraction, cell.censored);
  std::printf("  iterations to optimum: median %.1f (q25 %.1f, q75 %.1f)\n",
              median(cell.iterations_to_optimum),
              quantile(cell.iterations_to_optimum, 0.25),
              quantile(cell.iterations_to_optimum, 0.75));
  std::printf("  final size: median %.1f  final fitness: mean %.2f\n",
              median(cell.final_sizes), mean(cell.final_fitnesses));
  return kExitOk;
}

struct SimulateArgs {
  std::string machine;
  std::string input;
  bool delay = false;
  int cycles = 0;
  bool trace = false;
};

int cmd_simulate(const SimulateArgs& args) {
  const Machine m = load_machine(args.machine);
  const auto inputs = parse_bits(args.input);
  const int cycles = args.cycles > 0 ? args.cycles : default_cycles(args.delay);

  if (m.mode == MachineMode::Pure) {
    if (!inputs.empty())
      throw std::runtime_error("pure machine takes no input bits");
    MachineState s = args.delay ? reset_with_history(m) : reset(m);
    if (args.trace) std::printf("t=0 %s\n", bits_to_string(s.states).c_str());
    for (int c = 0; c < cycles; ++c) {
      if (args.delay)
        step_delayed(m, s, {});
      else
        step(m, s, {});
      if (args.trace)
        std::printf("t=%d %s\n", s.time, bits_to_string(s.states).c_str());
    }
    std::printf("final state: %s\n", bits_to_string(s.states).c_str());
    return kExitOk;
  }

  const RunResult result = run(m, inputs, cycles, args.delay);
  if (args.trace)
    for (size_t t = 0; t < result.trace.size(); ++t)
      std::printf("t=%zu %s\n", t, bits_to_string(result.trace[t]).c_str());
  std::printf("outputs: %s\n", bits_to_string(result.outputs).c_str());
  return kExitOk;
}

struct VerifyArgs {
  std::string machine;
  std::string task;
  bool delay = false;
};

int cmd_verify(const VerifyArgs& args) {
  const Machine m = load_machine(args.machine);
  const TaskSpec task = make_task(args.task);
  const FitnessReport report = evaluate_fitness(m, task, args.delay);

  std::printf("machine: %s (size %d)\n", args.machine.c_str(), m.size());
  std::printf("task: %s  delayed: %s  cycles: %d\n", task.name.c_str(),
              args.delay ? "yes" : "no", default_cycles(args.delay));
  std::printf("fitness: %d / %d\n", report.fitness, task.optimum());
  std::printf("presentation,input,expected,actual,pass\n");
  // Recover per-presentation actuals for the report rows.
  if (task.kind == TaskKind::Combinational) {
    for (size_t p = 0; p < task.presentations.size(); ++p) {
      const Presentation& pres = task.presentations[p];
      const RunResult r =
          run(m, pres.inputs, default_cycles(args.delay), args.delay);
      std::printf("%zu,%s,%s,%s,%d\n", p, bits_to_string(pres.inputs).c_str(),
                  bits_to_string(pres.expected).c_str(),
                  bits_to_string(r.outputs).c_str(), report.passed[p] ? 1 : 0);
    }
  } else {
    MachineState s = args.delay ? reset_with_history(m) : reset(m);
    for (size_t p = 0; p < task.presentations.size(); ++p) {
      const Presentation& pres = task.presentations[p];
      for (int c = 0; c < default_cycles(args.delay); ++c) {
        if (args.delay)
          step_delayed(m, s, pres.inputs);
        else
          step(m, s, pres.inputs);
      }
      std::vector<uint8_t> actual;
      for (int k = 0; k < m.num_outputs; ++k)
        actual.push_back(s.states[static_cast<size_t>(m.output_node(k))]);
      std::printf("%zu,%s,%s,%s,%d\n", p, bits_to_string(pres.inputs).c_str(),
                  bits_to_string(pres.expected).c_str(),
                  bits_to_string(actual).c_str(), report.passed[p] ? 1 : 0);
    }
  }
  return kExitOk;
}

struct ExperimentArgs {
  std::string plan;
  std::string out;
  bool has_seed = false;
  uint64_t seed = 0;
};

int cmd_experiment(const ExperimentArgs& args) {
  ExperimentPlan plan = load_plan(args.plan);
  if (!args.out.empty()) plan.output_dir = args.out;
  if (args.has_seed) plan.master_seed = args.seed;
  const ExperimentSummary summary = run_experiment(plan);
  std::printf("wrote results under %s\n", plan.output_dir.string().c_str());
  for (const CellSummary& cell : summary.cells)
    std::printf("  %s: success %.0f%%, iters-to-optimum median %.1f, "
                "final size median %.1f\n",
                cell.cell.name().c_str(), 100.0 * cell.success_fraction,
                median(cell.iterations_to_optimum), median(cell.final_sizes));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for unorganised machines and random Boolean "
               "networks: simulation, dynamics measurement, and "
               "imitation-programming design of logic circuits"};
  app.require_subcommand(1);

  DynamicsArgs dyn;
  auto* dynamics = app.add_subcommand(
      "dynamics", "Aggregate state-change dynamics of random networks");
  dynamics->add_option("--nodes", dyn.nodes, "Network sizes to sweep");
  dynamics->add_option("--trials", dyn.trials, "Random networks per size")
      ->check(CLI::PositiveNumber);
  dynamics->add_option("--cycles", dyn.cycles, "Update cycles per trial")
      ->check(CLI::PositiveNumber);
  dynamics->add_option("--seed", dyn.seed, "Master seed");
  dynamics->add_option("--out", dyn.out, "Output directory");

  EvolveArgs evo;
  auto* evolve = app.add_subcommand(
      "evolve", "Design machines for a task by imitation programming");
  evolve->add_option("--task", evo.task, "Task name")
      ->required()
      ->check(CLI::IsMember(task_names()));
  evolve->add_option("--runs", evo.runs, "Independent runs")
      ->check(CLI::PositiveNumber);
  evolve->add_option("--iters", evo.iters, "Iteration budget (0 = default)");
  evolve->add_flag("--delay", evo.delay, "Index-distance propagation delays");
  evolve->add_option("--functions", evo.functions, "Node function set")
      ->check(CLI::IsMember({"nand", "all"}));
  evolve->add_option("-P,--population", evo.population, "Population size")
      ->check(CLI::Range(2, 10000));
  evolve->add_option("--seed", evo.seed, "Master seed");
  evolve->add_option("--out", evo.out, "Output directory");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one machine on one input");
  simulate->add_option("--machine", sim.machine, "Machine file")->required();
  simulate->add_option("--input", sim.input, "Input bits, e.g. 10110");
  simulate->add_flag("--delay", sim.delay, "Index-distance propagation delays");
  simulate->add_option("--cycles", sim.cycles, "Update cycles (0 = default)");
  simulate->add_flag("--trace", sim.trace, "Print every cycle's state");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Score one machine on a task");
  verify->add_option("--machine", ver.machine, "Machine file")->required();
  verify->add_option("--task", ver.task, "Task name")
      ->required()
      ->check(CLI::IsMember(task_names()));
  verify->add_flag("--delay", ver.delay, "Index-distance propagation delays");

  ExperimentArgs exp;
  auto* experiment =
      app.add_subcommand("experiment", "Run a batch experiment plan");
  experiment->add_option("--plan", exp.plan, "Plan file (JSON)")->required();
  experiment->add_option("--out", exp.out, "Override the plan's output directory");
  auto* seed_opt =
      experiment->add_option("--seed", exp.seed, "Override the plan's seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help itself for --help; map every parse failure to
    // the usage exit code.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  exp.has_seed = seed_opt->count() > 0;
  try {
    if (dynamics->parsed()) return cmd_dynamics(dyn);
    if (evolve->parsed()) return cmd_evolve(evo);
    if (simulate->parsed()) return cmd_simulate(sim);
    if (verify->parsed()) return cmd_verify(ver);
    if (experiment->parsed()) return cmd_experiment(exp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
