#include "atype/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "atype/dynamics.hpp"
#include "atype/serialize.hpp"

namespace atype {

namespace fs = std::filesystem;

std::string CellSpec::name() const {
  return task + (delayed ? "_delayon" : "_delayoff") +
         (full_functions ? "_all6" : "_nand");
}

std::vector<CellSpec> ExperimentPlan::cells() const {
  std::vector<CellSpec> out;
  for (const std::string& task : tasks)
    for (bool delayed : delay_axis)
      for (bool full : function_axis)
        out.push_back({task, delayed, full});
  return out;
}

int ExperimentPlan::budget_for(const CellSpec& cell) const {
  if (auto it = budgets.find(cell.name()); it != budgets.end()) return it->second;
  if (auto it = budgets.find(cell.task); it != budgets.end()) return it->second;
  if (cell.task == "add2") return cell.delayed ? 50000 : 20000;
  if (cell.task == "mux6") return 20000;
  return 5000;  // demux, jk
}

namespace {

using nlohmann::json;

[[noreturn]] void plan_fail(const std::string& what) {
  throw std::runtime_error("experiment plan: " + what);
}

std::vector<bool> parse_axis(const json& value, const char* field) {
  std::vector<bool> axis;
  for (const auto& entry : value) {
    if (entry.is_boolean()) {
      axis.push_back(entry.get<bool>());
    } else if (entry.is_string()) {
      const std::string s = entry.get<std::string>();
      if (s == "on" || s == "all")
        axis.push_back(true);
      else if (s == "off" || s == "nand")
        axis.push_back(false);
      else
        plan_fail(std::string(field) + ": unknown value \"" + s + "\"");
    } else {
      plan_fail(std::string(field) + ": expected booleans or strings");
    }
  }
  if (axis.empty()) plan_fail(std::string(field) + ": empty axis");
  return axis;
}

}  // namespace

ExperimentPlan plan_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    plan_fail(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) plan_fail("top level is not an object");

  ExperimentPlan plan;
  const std::string kind = doc.value("kind", "evolve");
  if (kind == "dynamics")
    plan.kind = ExperimentKind::Dynamics;
  else if (kind == "evolve")
    plan.kind = ExperimentKind::Evolve;
  else if (kind == "compare")
    plan.kind = ExperimentKind::Compare;
  else
    plan_fail("unknown kind \"" + kind + "\"");

  if (doc.contains("tasks")) {
    plan.tasks.clear();
    for (const auto& t : doc["tasks"]) {
      const std::string name = t.get<std::string>();
      if (!try_make_task(name)) plan_fail("unknown task \"" + name + "\"");
      plan.tasks.push_back(name);
    }
  }
  plan.runs = doc.value("runs", plan.runs);
  if (plan.runs < 1) plan_fail("runs must be >= 1");
  if (doc.contains("delay")) plan.delay_axis = parse_axis(doc["delay"], "delay");
  if (doc.contains("functions"))
    plan.function_axis = parse_axis(doc["functions"], "functions");
  if (doc.contains("budgets")) {
    for (const auto& [key, value] : doc["budgets"].items())
      plan.budgets[key] = value.get<int>();
  }
  plan.population_size = doc.value("population", plan.population_size);
  plan.initial_extra_nodes =
      doc.value("initial_extra_nodes", plan.initial_extra_nodes);
  plan.master_seed = doc.value("seed", plan.master_seed);
  if (doc.contains("out")) plan.output_dir = doc["out"].get<std::string>();
  if (doc.contains("nodes"))
    plan.dynamics_nodes = doc["nodes"].get<std::vector<int>>();
  plan.dynamics_trials = doc.value("trials", plan.dynamics_trials);
  plan.dynamics_cycles = doc.value("cycles", plan.dynamics_cycles);

  if (plan.kind != ExperimentKind::Dynamics) {
    if (plan.tasks.empty()) plan_fail("no tasks listed");
    if (plan.kind == ExperimentKind::Compare && plan.cells().size() < 2)
      plan_fail("compare needs at least two cells");
  }
  return plan;
}

ExperimentPlan load_plan(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return plan_from_json(text);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

RunOutcome outcome_from_record(const RunRecord& record, int optimum) {
  RunOutcome out;
  out.trajectory = record.trajectory;
  for (const IterationStats& s : record.trajectory) {
    if (s.best_fitness >= optimum) {
      out.iterations_to_optimum = s.iteration;
      break;
    }
  }
  out.final_best_fitness = record.trajectory.back().best_fitness;
  out.final_best_size = record.trajectory.back().best_size;
  return out;
}

RunOutcome read_run_csv(const fs::path& path, int optimum) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line != "iteration,best_fitness,mean_fitness,best_size")
    throw std::runtime_error(path.string() + ": bad or missing header");

  RunOutcome out;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    IterationStats s;
    char junk;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%d%c", &s.iteration,
                    &s.best_fitness, &s.mean_fitness, &s.best_size,
                    &junk) != 4)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": bad row");
    out.trajectory.push_back(s);
  }
  if (out.trajectory.empty())
    throw std::runtime_error(path.string() + ": no data rows");
  for (const IterationStats& s : out.trajectory) {
    if (s.best_fitness >= optimum) {
      out.iterations_to_optimum = s.iteration;
      break;
    }
  }
  out.final_best_fitness = out.trajectory.back().best_fitness;
  out.final_best_size = out.trajectory.back().best_size;
  return out;
}

CellSummary summarize_cell(const CellSpec& cell, int budget, int optimum,
                           std::span<const RunOutcome> outcomes) {
  if (outcomes.empty())
    throw std::invalid_argument("summarize_cell: no outcomes");
  CellSummary sum;
  sum.cell = cell;
  sum.runs = static_cast<int>(outcomes.size());
  sum.budget = budget;
  sum.optimum = optimum;

  size_t length = 0;
  for (const RunOutcome& o : outcomes)
    length = std::max(length, o.trajectory.size());

  std::vector<double> fit_column(outcomes.size());
  std::vector<double> size_column(outcomes.size());
  for (size_t t = 0; t < length; ++t) {
    for (size_t r = 0; r < outcomes.size(); ++r) {
      // Early-terminated runs hold their final value.
      const auto& traj = outcomes[r].trajectory;
      const IterationStats& s = t < traj.size() ? traj[t] : traj.back();
      fit_column[r] = s.best_fitness;
      size_column[r] = s.best_size;
    }
    sum.mean_best_fitness.push_back(mean(fit_column));
    sum.median_best_fitness.push_back(median(fit_column));
    sum.mean_best_size.push_back(mean(size_column));
    sum.median_best_size.push_back(median(size_column));
  }

  int successes = 0;
  for (const RunOutcome& o : outcomes) {
    if (o.iterations_to_optimum) {
      ++successes;
      sum.iterations_to_optimum.push_back(*o.iterations_to_optimum);
    } else {
      ++sum.censored;
      sum.iterations_to_optimum.push_back(budget + 1);
    }
    sum.final_sizes.push_back(o.final_best_size);
    sum.final_fitnesses.push_back(o.final_best_fitness);
  }
  sum.success_fraction = static_cast<double>(successes) / sum.runs;
  return sum;
}

std::vector<Comparison> compare_cells(const CellSummary& a,
                                      const CellSummary& b) {
  std::vector<Comparison> out;
  const auto add = [&](const std::string& metric,
                       std::span<const double> va,
                       std::span<const double> vb, bool ranksum) {
    const TestResult gt = ranksum ? mann_whitney_greater(va, vb)
                                  : welch_t_greater(va, vb);
    const TestResult lt = ranksum ? mann_whitney_greater(vb, va)
                                  : welch_t_greater(vb, va);
    out.push_back({a.cell.name(), b.cell.name(), metric, gt.statistic,
                   gt.p_value, "a_gt_b"});
    out.push_back({a.cell.name(), b.cell.name(), metric, lt.statistic,
                   lt.p_value, "a_lt_b"});
  };
  add("iterations_to_optimum_ranksum", a.iterations_to_optimum,
      b.iterations_to_optimum, true);
  add("iterations_to_optimum_welch", a.iterations_to_optimum,
      b.iterations_to_optimum, false);
  add("final_size_ranksum", a.final_sizes, b.final_sizes, true);
  add("final_size_welch", a.final_sizes, b.final_sizes, false);
  return out;
}

namespace {

void append_row(std::string& csv, const char* metric, long iteration,
                double value) {
  char row[128];
  std::snprintf(row, sizeof(row), "%s,%ld,%.6f\n", metric, iteration, value);
  csv += row;
}

}  // namespace

std::string summary_to_csv(const CellSummary& s) {
  std::string csv = "metric,iteration,value\n";
  append_row(csv, "runs", -1, s.runs);
  append_row(csv, "budget", -1, s.budget);
  append_row(csv, "optimum", -1, s.optimum);
  append_row(csv, "success_fraction", -1, s.success_fraction);
  append_row(csv, "censored_runs", -1, s.censored);
  append_row(csv, "iters_to_optimum_q25", -1, quantile(s.iterations_to_optimum, 0.25));
  append_row(csv, "iters_to_optimum_median", -1, median(s.iterations_to_optimum));
  append_row(csv, "iters_to_optimum_q75", -1, quantile(s.iterations_to_optimum, 0.75));
  append_row(csv, "final_size_mean", -1, mean(s.final_sizes));
  append_row(csv, "final_size_median", -1, median(s.final_sizes));
  append_row(csv, "final_size_min", -1, quantile(s.final_sizes, 0.0));
  append_row(csv, "final_size_max", -1, quantile(s.final_sizes, 1.0));
  append_row(csv, "final_fitness_mean", -1, mean(s.final_fitnesses));
  append_row(csv, "final_fitness_median", -1, median(s.final_fitnesses));
  for (size_t t = 0; t < s.mean_best_fitness.size(); ++t)
    append_row(csv, "mean_best_fitness", static_cast<long>(t), s.mean_best_fitness[t]);
  for (size_t t = 0; t < s.median_best_fitness.size(); ++t)
    append_row(csv, "median_best_fitness", static_cast<long>(t), s.median_best_fitness[t]);
  for (size_t t = 0; t < s.mean_best_size.size(); ++t)
    append_row(csv, "mean_best_size", static_cast<long>(t), s.mean_best_size[t]);
  for (size_t t = 0; t < s.median_best_size.size(); ++t)
    append_row(csv, "median_best_size", static_cast<long>(t), s.median_best_size[t]);
  return csv;
}

std::string comparisons_to_csv(std::span<const Comparison> comparisons) {
  std::string csv = "cell_a,cell_b,metric,statistic,p_value,direction\n";
  char row[256];
  for (const Comparison& c : comparisons) {
    std::snprintf(row, sizeof(row), "%s,%s,%s,%.6f,%.6f,%s\n",
                  c.cell_a.c_str(), c.cell_b.c_str(), c.metric.c_str(),
                  c.statistic, c.p_value, c.direction.c_str());
    csv += row;
  }
  return csv;
}

uint64_t run_seed(uint64_t master, const CellSpec& cell, int run_index) {
  return derive_seed(master,
                     {hash_name(cell.name()), static_cast<uint64_t>(run_index)});
}

int worker_count() {
  if (const char* env = std::getenv("ATYPE_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  // Write-then-rename so an interrupted run never leaves a truncated
  // file that would be mistaken for a completed one.
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void run_dynamics_plan(const ExperimentPlan& plan) {
  for (int n : plan.dynamics_nodes) {
    Rng rng = Rng::stream(plan.master_seed,
                          {hash_name("dynamics"), static_cast<uint64_t>(n)});
    const auto series =
        aggregate_dynamics(n, plan.dynamics_trials, plan.dynamics_cycles, rng);
    write_file(plan.output_dir / ("dynamics_n" + std::to_string(n) + ".csv"),
               dynamics_to_csv(series));
  }
}

struct Job {
  CellSpec cell;
  int run_index;
  int budget;
};

}  // namespace

ExperimentSummary run_experiment(const ExperimentPlan& plan) {
  fs::create_directories(plan.output_dir);
  ExperimentSummary summary;
  if (plan.kind == ExperimentKind::Dynamics) {
    run_dynamics_plan(plan);
    return summary;
  }

  const auto cells = plan.cells();
  std::vector<Job> jobs;
  for (const CellSpec& cell : cells)
    for (int r = 0; r < plan.runs; ++r)
      jobs.push_back({cell, r, plan.budget_for(cell)});

  std::atomic<size_t> next_job{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    for (;;) {
      const size_t j = next_job.fetch_add(1);
      if (j >= jobs.size() || failed.load()) return;
      const Job& job = jobs[j];
      const std::string stem =
          job.cell.name() + "_" + std::to_string(job.run_index);
      const fs::path run_path = plan.output_dir / ("run_" + stem + ".csv");
      try {
        if (!fs::exists(run_path)) {
          IPConfig config;
          config.population_size = plan.population_size;
          config.max_iterations = job.budget;
          config.task = make_task(job.cell.task);
          config.delayed = job.cell.delayed;
          config.function_set = job.cell.full_functions
                                    ? FunctionSet::all_six()
                                    : FunctionSet::nand_only();
          config.initial_extra_nodes = plan.initial_extra_nodes;
          config.master_seed =
              run_seed(plan.master_seed, job.cell, job.run_index);
          const RunRecord record = run_ip(config);
          write_file(run_path, run_record_to_csv(record));
          write_file(plan.output_dir / ("best_" + stem + ".machine"),
                     machine_to_json(record.best));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
        return;
      }
    }
  };

  const int workers =
      std::min<int>(worker_count(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < std::max(workers, 1); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("experiment failed: " + first_error);

  // Summaries always come from the files, so resumed and fresh
  // campaigns report identically.
  for (const CellSpec& cell : cells) {
    const int optimum = make_task(cell.task).optimum();
    const int budget = plan.budget_for(cell);
    std::vector<RunOutcome> outcomes;
    for (int r = 0; r < plan.runs; ++r) {
      const fs::path run_path =
          plan.output_dir /
          ("run_" + cell.name() + "_" + std::to_string(r) + ".csv");
      outcomes.push_back(read_run_csv(run_path, optimum));
    }
    summary.cells.push_back(summarize_cell(cell, budget, optimum, outcomes));
    write_file(plan.output_dir / ("summary_" + cell.name() + ".csv"),
               summary_to_csv(summary.cells.back()));
  }

  for (size_t i = 0; i < summary.cells.size(); ++i)
    for (size_t j = i + 1; j < summary.cells.size(); ++j) {
      const auto pair = compare_cells(summary.cells[i], summary.cells[j]);
      summary.comparisons.insert(summary.comparisons.end(), pair.begin(),
                                 pair.end());
    }
  write_file(plan.output_dir / "compare.csv",
             comparisons_to_csv(summary.comparisons));
  return summary;
}

}  // namespace atype
