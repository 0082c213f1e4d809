#include "atype/dynamics.hpp"

#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace atype {

namespace {

std::vector<uint8_t> random_bits(int n, Rng& rng) {
  std::vector<uint8_t> bits(static_cast<size_t>(n));
  for (auto& b : bits) b = rng.bit();
  return bits;
}

// Byte-packed state vector, usable as a hash key.
std::string pack_states(std::span<const uint8_t> states) {
  std::string key((states.size() + 7) / 8, '\0');
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i]) key[i / 8] = static_cast<char>(key[i / 8] | (1 << (i % 8)));
  return key;
}

}  // namespace

ChangeFractionSeries change_fraction(const Machine& m,
                                     std::span<const uint8_t> initial,
                                     int cycles) {
  if (m.mode != MachineMode::Pure)
    throw std::invalid_argument("change_fraction: pure-mode machine required");
  if (cycles < 1) throw std::invalid_argument("change_fraction: cycles < 1");
  MachineState s = reset_to(m, initial);

  ChangeFractionSeries series;
  series.trials = 1;
  series.mean.reserve(static_cast<size_t>(cycles));
  std::vector<uint8_t> prev = s.states;
  for (int t = 1; t <= cycles; ++t) {
    step(m, s, {});
    int changed = 0;
    for (int i = 0; i < m.size(); ++i)
      changed += s.states[static_cast<size_t>(i)] != prev[static_cast<size_t>(i)];
    series.mean.push_back(static_cast<double>(changed) / m.size());
    prev = s.states;
  }
  series.min = series.mean;
  series.max = series.mean;
  return series;
}

ChangeFractionSeries aggregate_dynamics(int num_nodes, int trials, int cycles,
                                        Rng& rng, const FunctionSet& fns) {
  if (num_nodes < 1) throw std::invalid_argument("aggregate_dynamics: N < 1");
  if (trials < 1) throw std::invalid_argument("aggregate_dynamics: trials < 1");
  const uint64_t base = rng.next_u64();

  ChangeFractionSeries agg;
  agg.trials = trials;
  agg.mean.assign(static_cast<size_t>(cycles), 0.0);
  agg.min.assign(static_cast<size_t>(cycles), 1.0);
  agg.max.assign(static_cast<size_t>(cycles), 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    Rng trial_rng = Rng::stream(base, {static_cast<uint64_t>(trial)});
    Machine m = random_pure_machine(num_nodes, fns, trial_rng);
    const auto initial = random_bits(num_nodes, trial_rng);
    const auto series = change_fraction(m, initial, cycles);
    for (int t = 0; t < cycles; ++t) {
      const double f = series.mean[static_cast<size_t>(t)];
      agg.mean[static_cast<size_t>(t)] += f;
      if (f < agg.min[static_cast<size_t>(t)]) agg.min[static_cast<size_t>(t)] = f;
      if (f > agg.max[static_cast<size_t>(t)]) agg.max[static_cast<size_t>(t)] = f;
    }
  }
  for (auto& v : agg.mean) v /= trials;
  return agg;
}

std::string dynamics_to_csv(const ChangeFractionSeries& series) {
  std::string csv = "cycle,mean,min,max\n";
  char row[128];
  for (size_t t = 0; t < series.mean.size(); ++t) {
    std::snprintf(row, sizeof(row), "%zu,%.6f,%.6f,%.6f\n", t + 1,
                  series.mean[t], series.min[t], series.max[t]);
    csv += row;
  }
  return csv;
}

AttractorReport find_attractor_from(const Machine& m,
                                    std::span<const uint8_t> initial,
                                    std::span<const uint8_t> inputs,
                                    int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("find_attractor: max_steps < 1");
  MachineState s = initial.empty() ? reset(m) : reset_to(m, initial);

  std::unordered_map<std::string, int> first_seen;
  first_seen.emplace(pack_states(s.states), 0);
  for (int t = 1; t <= max_steps; ++t) {
    step(m, s, inputs);
    auto [it, inserted] = first_seen.emplace(pack_states(s.states), t);
    if (!inserted) {
      AttractorReport report;
      report.found = true;
      report.transient_length = it->second;
      report.period = t - it->second;
      report.states_on_cycle = report.period;
      return report;
    }
  }
  return {};  // undetected within budget
}

AttractorReport find_attractor(const Machine& m, std::span<const uint8_t> inputs,
                               int max_steps) {
  return find_attractor_from(m, {}, inputs, max_steps);
}

}  // namespace atype
