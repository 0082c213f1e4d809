#include "atype/imitation.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace atype {

namespace {

int clamp_index(int v, int size) { return std::clamp(v, 0, size - 1); }

int offset_one(int v, Rng& rng) { return rng.coin() ? v + 1 : v - 1; }

// Growth body shared by the larger-model and equal-size paths.
void grow(Machine& imitator, const Machine& model, int source_index,
          bool with_error, int max_size, Rng& rng) {
  const int old_size = imitator.size();
  if (old_size >= max_size) return;
  const int new_size = old_size + 1;

  NodeGene gene = model.genes[static_cast<size_t>(source_index)];
  if (with_error) {
    gene.in1 = offset_one(gene.in1, rng);
    gene.in2 = offset_one(gene.in2, rng);
  }
  gene.in1 = clamp_index(gene.in1, new_size);
  gene.in2 = clamp_index(gene.in2, new_size);
  imitator.genes.push_back(gene);

  const int node = rng.below_int(old_size);
  NodeGene& rewired = imitator.genes[static_cast<size_t>(node)];
  (rng.coin() ? rewired.in1 : rewired.in2) = old_size;
}

void shrink(Machine& imitator, Rng& rng) {
  const int old_size = imitator.size();
  if (old_size <= imitator.min_size()) return;
  const int removed = old_size - 1;
  imitator.genes.pop_back();
  const int new_size = imitator.size();
  for (NodeGene& g : imitator.genes) {
    if (g.in1 == removed) g.in1 = rng.below_int(new_size);
    if (g.in2 == removed) g.in2 = rng.below_int(new_size);
  }
}

}  // namespace

int select_model(std::span<const int> fitnesses, int self_index, Rng& rng) {
  const int n = static_cast<int>(fitnesses.size());
  if (n < 2 && !(n == 1 && self_index < 0))
    throw std::invalid_argument("select_model: need at least one other individual");

  int64_t total = 0;
  for (int i = 0; i < n; ++i)
    if (i != self_index) total += fitnesses[static_cast<size_t>(i)];

  if (total == 0) {
    // Roulette is undefined at zero mass: fall back to uniform.
    int pick = static_cast<int>(rng.below(static_cast<uint64_t>(
        self_index >= 0 ? n - 1 : n)));
    if (self_index >= 0 && pick >= self_index) ++pick;
    return pick;
  }

  int64_t ticket = static_cast<int64_t>(rng.below(static_cast<uint64_t>(total)));
  for (int i = 0; i < n; ++i) {
    if (i == self_index) continue;
    ticket -= fitnesses[static_cast<size_t>(i)];
    if (ticket < 0) return i;
  }
  return self_index == n - 1 ? n - 2 : n - 1;  // unreachable
}

void op_copy_connection(Machine& imitator, const Machine& model,
                        bool with_error, Rng& rng) {
  const int size = imitator.size();
  const int node = rng.below_int(size);
  const bool first_slot = rng.coin();
  const NodeGene& source = node < model.size()
                               ? model.genes[static_cast<size_t>(node)]
                               : imitator.genes[static_cast<size_t>(node)];
  int value = clamp_index(first_slot ? source.in1 : source.in2, size);
  if (with_error) value = clamp_index(offset_one(value, rng), size);
  NodeGene& target = imitator.genes[static_cast<size_t>(node)];
  (first_slot ? target.in1 : target.in2) = value;
}

void op_copy_start_state(Machine& imitator, const Machine& model,
                         bool with_error, Rng& rng) {
  const int node = rng.below_int(imitator.size());
  uint8_t value = node < model.size()
                      ? model.genes[static_cast<size_t>(node)].start
                      : imitator.genes[static_cast<size_t>(node)].start;
  if (with_error) value = static_cast<uint8_t>(1 - value);
  imitator.genes[static_cast<size_t>(node)].start = value;
}

void op_resize(Machine& imitator, const Machine& model, bool with_error,
               int max_size, Rng& rng) {
  if (model.size() > imitator.size()) {
    // The model's first extra node is the one just past the imitator.
    grow(imitator, model, imitator.size(), with_error, max_size, rng);
  } else if (model.size() < imitator.size()) {
    shrink(imitator, rng);
  } else if (rng.coin()) {
    grow(imitator, model, rng.below_int(model.size()), with_error, max_size, rng);
  } else {
    shrink(imitator, rng);
  }
}

void op_copy_function(Machine& imitator, const Machine& model, bool with_error,
                      const FunctionSet& fns, Rng& rng) {
  const int node = rng.below_int(imitator.size());
  BoolFn value = node < model.size()
                     ? model.genes[static_cast<size_t>(node)].fn
                     : imitator.genes[static_cast<size_t>(node)].fn;
  if (with_error) value = fns.pick_other(value, rng);
  imitator.genes[static_cast<size_t>(node)].fn = value;
}

Machine imitate(const Machine& self, const Machine& model,
                const IPConfig& config, Rng& rng) {
  const bool rbn = config.function_set.size() > 1 && config.imitate_functions;
  const int menu = rbn ? 8 : 6;
  const int variant = rng.below_int(menu);
  const int op = variant >> 1;
  const bool with_error = (variant & 1) != 0;

  Machine out = self;
  switch (op) {
    case 0: op_copy_connection(out, model, with_error, rng); break;
    case 1: op_copy_start_state(out, model, with_error, rng); break;
    case 2: op_resize(out, model, with_error, config.max_size, rng); break;
    case 3: op_copy_function(out, model, with_error, config.function_set, rng); break;
  }
  return out;
}

bool prefer_candidate(const Individual& incumbent, const Individual& candidate,
                      Rng& rng) {
  if (candidate.fitness != incumbent.fitness)
    return candidate.fitness > incumbent.fitness;
  if (candidate.machine.size() != incumbent.machine.size())
    return candidate.machine.size() < incumbent.machine.size();
  return rng.coin();
}

namespace {

IterationStats population_stats(int iteration,
                                std::span<const Individual> pop) {
  IterationStats stats;
  stats.iteration = iteration;
  int64_t sum = 0;
  int best = -1, best_size = 0;
  for (const Individual& ind : pop) {
    sum += ind.fitness;
    if (ind.fitness > best ||
        (ind.fitness == best && ind.machine.size() < best_size)) {
      best = ind.fitness;
      best_size = ind.machine.size();
    }
  }
  stats.best_fitness = best;
  stats.best_size = best_size;
  stats.mean_fitness = static_cast<double>(sum) / static_cast<double>(pop.size());
  return stats;
}

}  // namespace

RunRecord run_ip(const IPConfig& config) {
  if (config.population_size < 2)
    throw std::invalid_argument("run_ip: population_size must be >= 2");
  if (config.max_iterations < 0)
    throw std::invalid_argument("run_ip: max_iterations must be >= 0");
  const int initial_size = config.task.num_inputs + config.task.num_outputs + 2 +
                           config.initial_extra_nodes;
  if (config.max_size < initial_size)
    throw std::invalid_argument("run_ip: max_size below the initial size");

  const int optimum = config.task.optimum();
  const bool combinational = config.task.kind == TaskKind::Combinational;
  std::optional<PackedEvaluator> packed;
  if (combinational)
    packed.emplace(config.task, config.delayed, config.input_mode);
  const auto fitness_of = [&](const Machine& m) {
    return combinational
               ? packed->evaluate(m).fitness
               : evaluate_fitness(m, config.task, config.delayed,
                                  config.input_mode)
                     .fitness;
  };

  const int p = config.population_size;
  std::vector<Individual> pop(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) {
    Rng rng = Rng::stream(config.master_seed, {0, static_cast<uint64_t>(i)});
    pop[static_cast<size_t>(i)].machine =
        random_machine(config.task.num_inputs, config.task.num_outputs,
                       config.initial_extra_nodes, config.function_set, rng);
    pop[static_cast<size_t>(i)].fitness =
        fitness_of(pop[static_cast<size_t>(i)].machine);
  }

  RunRecord record;
  record.seed = config.master_seed;
  record.trajectory.push_back(population_stats(0, pop));
  if (record.trajectory.back().best_fitness >= optimum)
    record.iterations_to_optimum = 0;

  std::vector<int> fitnesses(static_cast<size_t>(p));
  std::vector<Individual> candidates(static_cast<size_t>(p));
  std::vector<uint8_t> adopt(static_cast<size_t>(p));
  for (int iter = 1;
       iter <= config.max_iterations && !record.iterations_to_optimum; ++iter) {
    for (int i = 0; i < p; ++i)
      fitnesses[static_cast<size_t>(i)] = pop[static_cast<size_t>(i)].fitness;

    // Every candidate reads the iteration-start population; replacement
    // waits until all have been generated.
    for (int i = 0; i < p; ++i) {
      Rng rng = Rng::stream(config.master_seed,
                            {static_cast<uint64_t>(iter), static_cast<uint64_t>(i)});
      const int model = select_model(fitnesses, i, rng);
      Individual candidate;
      candidate.machine =
          imitate(pop[static_cast<size_t>(i)].machine,
                  pop[static_cast<size_t>(model)].machine, config, rng);
      candidate.fitness = fitness_of(candidate.machine);
      adopt[static_cast<size_t>(i)] =
          prefer_candidate(pop[static_cast<size_t>(i)], candidate, rng);
      candidates[static_cast<size_t>(i)] = std::move(candidate);
    }
    for (int i = 0; i < p; ++i)
      if (adopt[static_cast<size_t>(i)])
        pop[static_cast<size_t>(i)] = std::move(candidates[static_cast<size_t>(i)]);

    record.trajectory.push_back(population_stats(iter, pop));
    if (record.trajectory.back().best_fitness >= optimum)
      record.iterations_to_optimum = iter;
  }

  const Individual* best = &pop.front();
  for (const Individual& ind : pop) {
    if (ind.fitness > best->fitness ||
        (ind.fitness == best->fitness &&
         ind.machine.size() < best->machine.size()))
      best = &ind;
  }
  record.best = best->machine;
  record.best_fitness = best->fitness;
  return record;
}

std::string run_record_to_csv(const RunRecord& record) {
  std::string csv = "iteration,best_fitness,mean_fitness,best_size\n";
  char row[128];
  for (const IterationStats& s : record.trajectory) {
    std::snprintf(row, sizeof(row), "%d,%d,%.6f,%d\n", s.iteration,
                  s.best_fitness, s.mean_fitness, s.best_size);
    csv += row;
  }
  return csv;
}

}  // namespace atype
