#pragma once

// Monte Carlo observables: occupation time of the origin, box spanning,
// spanning probability with Wilson intervals, critical length, final density.

#include <cstdint>
#include <optional>
#include <vector>

#include "ydgrow/engine.hpp"
#include "ydgrow/grid.hpp"

namespace ydgrow {

inline constexpr uint64_t kDefaultMemoryBudget = 2ull << 30;  // bytes per trial

struct CensoredTime {
  int64_t value = 0;  // meaningful iff !censored
  bool censored = false;
  int64_t t_max = 0;
};

// Exact first-occupation time of the origin up to t_max, or censored.
// Influence travels at most rho sites per step, so a zero-boundary box of
// half-width rho*(t_max+1) reproduces the infinite-lattice dynamics at the
// origin through time t_max. The Bernoulli(p) field is keyed by absolute
// position, so enlarging t_max never changes an uncensored value.
// Errors: MemoryBudgetExceeded before allocation if the box would not fit.
CensoredTime first_occupation_time(const Rule& rule, double p, int64_t t_max, uint64_t seed,
                                   uint64_t memory_budget_bytes = kDefaultMemoryBudget);

// Bytes the cone box for (rule, t_max) needs (bit plane + birth plane + count planes).
uint64_t cone_memory_bytes(const Rule& rule, int64_t t_max);

struct SpanResult {
  bool spanned = false;
  int64_t time = 0;  // filling step when spanned; fixation observation step otherwise
};

// Runs cfg to fixation; spanned iff every cell ends occupied.
SpanResult spans(Configuration& cfg, const Rule& rule);

struct WilsonInterval {
  double lo = 0.0, hi = 0.0;
};

// 95% Wilson score interval.
WilsonInterval wilson95(uint32_t successes, uint32_t trials);

struct SpanTrial {
  uint64_t seed = 0;
  bool spanned = false;
  int64_t time = 0;
};

struct SpanningEstimate {
  double p_hat = 0.0;
  WilsonInterval ci;
  uint32_t trials = 0;
  uint32_t spanned = 0;
  std::vector<SpanTrial> details;
};

// trials independent Bernoulli(p) fills of an n-by-n zero-boundary box;
// trial i uses seed splitmix64(seed XOR i).
SpanningEstimate spanning_probability(const Rule& rule, uint32_t n, double p, uint32_t trials,
                                      uint64_t seed);

struct ProbePoint {
  uint32_t n = 0;
  double p_hat = 0.0;
  WilsonInterval ci;
};

struct LcEstimate {
  uint32_t n_star = 0;
  uint32_t trials_per_n = 0;
  std::vector<ProbePoint> probe_points;                          // sorted by n
  std::vector<std::pair<uint32_t, SpanningEstimate>> details;    // per probed n
};

// Smallest probed n with estimated spanning probability >= 1/2: factor-2
// sweep from n_min, then integer bisection inside the first bracket. Probe
// seeds derive as splitmix64(seed XOR n). Errors: NotBracketed if the
// estimate at n_max is still below 1/2.
LcEstimate critical_length(const Rule& rule, double p, uint32_t trials, uint32_t n_min,
                           uint32_t n_max, uint64_t seed);

// Density after fixation of a Bernoulli(p) fill.
double final_density(const Rule& rule, uint32_t n, double p, Boundary boundary, uint64_t seed);

}  // namespace ydgrow
