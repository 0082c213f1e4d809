#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atype/imitation.hpp"
#include "atype/stats.hpp"

namespace atype {

enum class ExperimentKind : uint8_t { Dynamics, Evolve, Compare };

/// One experimental condition: a task under a delay mode and a function
/// set. The name keys output files and seed derivation.
struct CellSpec {
  std::string task;
  bool delayed = false;
  bool full_functions = false;

  std::string name() const;  // e.g. "demux_delayoff_nand"
  bool operator==(const CellSpec&) const = default;
};

/// A batch campaign. Evolve/compare kinds run `runs` seeded IP runs per
/// cell (tasks crossed with the delay and function axes); the dynamics
/// kind sweeps network sizes instead.
struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::Evolve;
  std::vector<std::string> tasks;
  int runs = 20;
  std::vector<bool> delay_axis = {false};
  std::vector<bool> function_axis = {false};  // false = NAND-only, true = all six
  /// Iteration budgets by cell name or task name; unlisted cells fall
  /// back to the defaults (20000 for mux6/add2, 5000 for demux/jk,
  /// 50000 for add2 under delay).
  std::map<std::string, int> budgets;
  int population_size = 20;
  int initial_extra_nodes = 30;
  uint64_t master_seed = 0;
  std::filesystem::path output_dir = ".";
  // Dynamics kind only.
  std::vector<int> dynamics_nodes = {16, 50, 100, 500};
  int dynamics_trials = 100;
  int dynamics_cycles = 40;

  std::vector<CellSpec> cells() const;
  int budget_for(const CellSpec& cell) const;
};

ExperimentPlan plan_from_json(const std::string& text);
ExperimentPlan load_plan(const std::filesystem::path& path);

/// Everything a summary needs from one run, as recoverable from its
/// CSV file.
struct RunOutcome {
  std::vector<IterationStats> trajectory;
  std::optional<int> iterations_to_optimum;
  int final_best_fitness = 0;
  int final_best_size = 0;
};

RunOutcome outcome_from_record(const RunRecord& record, int optimum);
RunOutcome read_run_csv(const std::filesystem::path& path, int optimum);

struct CellSummary {
  CellSpec cell;
  int runs = 0;
  int budget = 0;
  int optimum = 0;
  /// Per-iteration aggregates over runs, index = iteration; runs that
  /// finished early are extended at their final best values.
  std::vector<double> mean_best_fitness;
  std::vector<double> median_best_fitness;
  std::vector<double> mean_best_size;
  std::vector<double> median_best_size;
  double success_fraction = 0.0;
  int censored = 0;
  /// One entry per run; censored runs carry budget+1 so they rank
  /// worst in every comparison.
  std::vector<double> iterations_to_optimum;
  std::vector<double> final_sizes;
  std::vector<double> final_fitnesses;
};

CellSummary summarize_cell(const CellSpec& cell, int budget, int optimum,
                           std::span<const RunOutcome> outcomes);

/// One pairwise statistical comparison; `direction` names the one-sided
/// alternative tested (`a_gt_b` or `a_lt_b`), and the statistic belongs
/// to the first sample of that direction.
struct Comparison {
  std::string cell_a;
  std::string cell_b;
  std::string metric;
  double statistic = 0.0;
  double p_value = 1.0;
  std::string direction;
};

/// Rank-sum and Welch tests on iterations-to-optimum and final size,
/// both one-sided directions each.
std::vector<Comparison> compare_cells(const CellSummary& a, const CellSummary& b);

struct ExperimentSummary {
  std::vector<CellSummary> cells;
  std::vector<Comparison> comparisons;
};

/// Long-format CSV, header `metric,iteration,value`; whole-run scalars
/// carry iteration -1.
std::string summary_to_csv(const CellSummary& summary);
std::string comparisons_to_csv(std::span<const Comparison> comparisons);

/// Seed for one run: derived from the master seed, the cell name, and
/// the run index, never from scheduling.
uint64_t run_seed(uint64_t master, const CellSpec& cell, int run_index);

/// ATYPE_WORKERS when set, else the hardware concurrency.
int worker_count();

/// Executes the plan, writing run_<cell>_<idx>.csv,
/// best_<cell>_<idx>.machine, summary_<cell>.csv and compare.csv under
/// the output directory (dynamics plans write dynamics_n<N>.csv).
/// Existing complete run files are loaded instead of recomputed, so an
/// interrupted campaign resumes where it stopped. Summaries are always
/// recomputed from the run files on disk.
ExperimentSummary run_experiment(const ExperimentPlan& plan);

}  // namespace atype
