#pragma once

// Reproducible Monte Carlo sweeps. Trial i of p-grid entry k runs with seed
// splitmix64(master_seed XOR (k*trials + i)); rows are gathered by index and
// sorted by (p, n, trial), so the CSV bytes do not depend on the worker
// count. Wall-clock timings appear only in the JSON summary.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ydgrow/csv.hpp"
#include "ydgrow/grid.hpp"
#include "ydgrow/observables.hpp"
#include "ydgrow/theory.hpp"
#include "ydgrow/zeroset.hpp"

namespace ydgrow {

enum class ExperimentKind { EstimateT, EstimateLc, EstimatePower, Density, Simulate };

const char* experiment_kind_name(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Simulate;
  ZeroSet zero_set = line_zero_set(1, 1);
  uint32_t rho = 1;
  std::vector<double> p_grid;  // distinct values; strictly decreasing for estimate-power
  uint32_t trials = 100;
  int64_t t_max = 256;     // estimate-t initial horizon; simulate step cap (0 = none)
  int64_t t_max_cap = 4096;  // bound for the estimate-t doubling loop
  uint32_t n = 64;         // box side for density and simulate
  uint32_t n_min = 8;      // estimate-lc bracket
  uint32_t n_max = 4096;
  Boundary boundary = Boundary::Zero;
  uint64_t master_seed = 1;
  uint64_t memory_budget = kDefaultMemoryBudget;
  uint32_t threads = 0;  // 0 = hardware count; YDGROW_THREADS caps either way
  std::string pattern = "random";  // simulate seed: random | packed-strip |
                                   // adjacent-lines | diagonal | parallel-lines
  uint32_t pattern_k = 1;
  uint32_t pattern_spacing = 1;
  std::string pattern_orient = "horizontal";
  int shade_period = 8;

  void validate() const;  // Errc::BadConfig with the offending field named

  // Strict: unknown keys are rejected so typos cannot silently fall back to
  // defaults. "zeroset" accepts the text form ("3 2 1") or a width array.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct MedianAggregate {
  double p = 0.0;
  uint32_t trials = 0;
  uint32_t censored = 0;
  std::optional<double> median_T;  // absent when more than half the sample is censored
  int64_t t_max = 0;               // horizon the reported sample used
};

struct ExperimentResult {
  std::vector<TrialRow> trials;
  std::string aggregates_csv;  // distinct versioned header per experiment kind
  nlohmann::json summary;      // config echo, per-p aggregates, timings
  std::optional<FitResult> fit;                   // estimate-t / estimate-power
  std::vector<MedianAggregate> medians;           // estimate-t / estimate-power
  std::vector<std::pair<double, LcEstimate>> lc;  // estimate-lc, one per p
  std::optional<Configuration> final_state;       // simulate
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Requested worker count (0 = hardware), capped by YDGROW_THREADS when set.
uint32_t resolve_thread_count(uint32_t requested);

// Runs fn(0..count-1) on up to `threads` workers; rethrows the first error.
void parallel_for(uint32_t count, uint32_t threads, const std::function<void(uint32_t)>& fn);

}  // namespace ydgrow
