#include "ydgrow/observables.hpp"

#include <algorithm>
#include <cmath>

namespace ydgrow {

uint64_t cone_memory_bytes(const Rule& rule, int64_t t_max) {
  uint64_t half = uint64_t(rule.rho()) * (uint64_t(t_max) + 1);
  uint64_t side = 2 * half + 1;
  uint64_t cells = side * side;
  // bit plane (1/8) + birth times (4) + the engine's two u16 count planes (4),
  // rounded up for frontier scratch.
  return cells * 9;
}

CensoredTime first_occupation_time(const Rule& rule, double p, int64_t t_max, uint64_t seed,
                                   uint64_t memory_budget_bytes) {
  if (p < 0.0 || p > 1.0) fail(Errc::BadConfig, "p must lie in [0, 1]");
  if (t_max < 0) fail(Errc::BadConfig, "t_max must be >= 0");
  if (cone_memory_bytes(rule, t_max) > memory_budget_bytes)
    fail(Errc::MemoryBudgetExceeded, "cone box for t_max " + std::to_string(t_max) +
                                         " needs " + std::to_string(cone_memory_bytes(rule, t_max)) +
                                         " bytes");
  int64_t half = int64_t(rule.rho()) * (t_max + 1);
  uint32_t side = uint32_t(2 * half + 1);
  Configuration cfg(side, side, Boundary::Zero);
  for (uint32_t y = 0; y < side; ++y)
    for (uint32_t x = 0; x < side; ++x)
      if (field_bernoulli(seed, int64_t(x) - half, int64_t(y) - half, p)) cfg.set(x, y);

  Outcome out = run(cfg, rule, StopCondition::until_origin(half, half, t_max));
  CensoredTime result;
  result.t_max = t_max;
  if (out.stop_reason == StopReason::OriginOccupied) {
    result.value = out.stop_time;
  } else {
    result.censored = true;
  }
  return result;
}

SpanResult spans(Configuration& cfg, const Rule& rule) {
  Outcome out = run(cfg, rule, StopCondition::until_fixed());
  return SpanResult{out.final_density == 1.0, out.stop_time};
}

WilsonInterval wilson95(uint32_t successes, uint32_t trials) {
  if (trials == 0) fail(Errc::BadConfig, "Wilson interval needs at least one trial");
  double z = 1.959963984540054;  // 97.5% normal quantile
  double n = trials, ph = double(successes) / n, z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (ph + z2 / (2 * n)) / denom;
  double margin = (z / denom) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
  return WilsonInterval{std::max(0.0, center - margin), std::min(1.0, center + margin)};
}

SpanningEstimate spanning_probability(const Rule& rule, uint32_t n, double p, uint32_t trials,
                                      uint64_t seed) {
  if (trials == 0) fail(Errc::BadConfig, "need at least one trial");
  SpanningEstimate est;
  est.trials = trials;
  est.details.reserve(trials);
  for (uint32_t i = 0; i < trials; ++i) {
    uint64_t trial_seed = derive_seed(seed, i);
    SplitMix64 rng(trial_seed);
    Configuration cfg = random_configuration(n, n, Boundary::Zero, p, rng);
    SpanResult r = spans(cfg, rule);
    if (r.spanned) ++est.spanned;
    est.details.push_back(SpanTrial{trial_seed, r.spanned, r.time});
  }
  est.p_hat = double(est.spanned) / trials;
  est.ci = wilson95(est.spanned, trials);
  return est;
}

LcEstimate critical_length(const Rule& rule, double p, uint32_t trials, uint32_t n_min,
                           uint32_t n_max, uint64_t seed) {
  if (n_min < 1 || n_min > n_max) fail(Errc::BadConfig, "need 1 <= n_min <= n_max");
  LcEstimate est;
  est.trials_per_n = trials;

  auto probe = [&](uint32_t n) -> const SpanningEstimate& {
    for (auto& [pn, pe] : est.details)
      if (pn == n) return pe;
    est.details.emplace_back(n, spanning_probability(rule, n, p, trials, derive_seed(seed, n)));
    return est.details.back().second;
  };

  // Factor-2 sweep for a bracket, n_max clamped in as the last candidate.
  uint32_t lo = 0, hi = 0;
  uint32_t prev = 0;
  for (uint64_t n = n_min;; n *= 2) {
    uint32_t probe_n = uint32_t(std::min<uint64_t>(n, n_max));
    const SpanningEstimate& e = probe(probe_n);
    if (e.p_hat >= 0.5) {
      hi = probe_n;
      lo = prev;  // 0 when the very first probe crossed
      break;
    }
    prev = probe_n;
    if (probe_n == n_max)
      fail(Errc::NotBracketed, "spanning estimate below 1/2 at n_max " + std::to_string(n_max));
  }

  if (lo != 0) {
    while (hi - lo > 1) {
      uint32_t mid = lo + (hi - lo) / 2;
      if (probe(mid).p_hat >= 0.5)
        hi = mid;
      else
        lo = mid;
    }
  }
  est.n_star = hi;

  std::sort(est.details.begin(), est.details.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [n, e] : est.details) est.probe_points.push_back(ProbePoint{n, e.p_hat, e.ci});
  return est;
}

double final_density(const Rule& rule, uint32_t n, double p, Boundary boundary, uint64_t seed) {
  SplitMix64 rng(seed);
  Configuration cfg = random_configuration(n, n, boundary, p, rng);
  Outcome out = run(cfg, rule, StopCondition::until_fixed());
  return out.final_density;
}

}  // namespace ydgrow
