#include "ydgrow/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <tuple>

#include "ydgrow/engine.hpp"
#include "ydgrow/error.hpp"
#include "ydgrow/render.hpp"
#include "ydgrow/rng.hpp"

namespace ydgrow {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t ms_since(Clock::time_point start) {
  return uint64_t(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

}  // namespace

const char* experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::EstimateT: return "estimate-t";
    case ExperimentKind::EstimateLc: return "estimate-lc";
    case ExperimentKind::EstimatePower: return "estimate-power";
    case ExperimentKind::Density: return "density";
    case ExperimentKind::Simulate: return "simulate";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "estimate-t") return ExperimentKind::EstimateT;
  if (s == "estimate-lc") return ExperimentKind::EstimateLc;
  if (s == "estimate-power") return ExperimentKind::EstimatePower;
  if (s == "density") return ExperimentKind::Density;
  if (s == "simulate") return ExperimentKind::Simulate;
  fail(Errc::BadConfig, "unknown experiment kind: '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (rho < 1) fail(Errc::BadConfig, "rho must be >= 1");
  Rule rule(zero_set, rho);  // surfaces zero-set / rho problems as config errors
  if (trials < 1) fail(Errc::BadConfig, "trials must be >= 1");
  if (shade_period < 2) fail(Errc::BadConfig, "shade_period must be >= 2");
  for (double p : p_grid)
    if (!(p > 0.0 && p <= 1.0)) fail(Errc::BadConfig, "p values must lie in (0, 1]");
  for (size_t i = 0; i < p_grid.size(); ++i)
    for (size_t j = i + 1; j < p_grid.size(); ++j)
      if (p_grid[i] == p_grid[j]) fail(Errc::BadConfig, "p values must be distinct");
  bool needs_p = kind != ExperimentKind::Simulate || pattern == "random";
  if (needs_p && p_grid.empty()) fail(Errc::BadConfig, "no p values given");
  switch (kind) {
    case ExperimentKind::EstimatePower:
      if (p_grid.size() < 3) fail(Errc::BadConfig, "estimate-power needs at least 3 p values");
      if (!std::is_sorted(p_grid.rbegin(), p_grid.rend(),
                          [](double a, double b) { return a < b; }))
        fail(Errc::BadConfig, "estimate-power needs a strictly decreasing p grid");
      [[fallthrough]];
    case ExperimentKind::EstimateT:
      if (t_max < 1) fail(Errc::BadConfig, "t_max must be >= 1");
      if (t_max_cap < t_max) fail(Errc::BadConfig, "t_max_cap must be >= t_max");
      break;
    case ExperimentKind::EstimateLc:
      if (n_min < 1 || n_min >= n_max) fail(Errc::BadConfig, "need 1 <= n_min < n_max");
      break;
    case ExperimentKind::Density:
    case ExperimentKind::Simulate:
      if (n < 1) fail(Errc::BadConfig, "n must be >= 1");
      if (boundary == Boundary::Periodic && n < 2 * rho + 1)
        fail(Errc::BadConfig, "periodic box needs n >= 2*rho+1");
      break;
  }
  if (kind == ExperimentKind::Simulate) {
    if (pattern != "random" && pattern != "packed-strip" && pattern != "adjacent-lines" &&
        pattern != "diagonal" && pattern != "parallel-lines")
      fail(Errc::BadConfig, "unknown pattern: '" + pattern + "'");
    if (pattern == "random" && p_grid.size() != 1)
      fail(Errc::BadConfig, "simulate with a random fill takes exactly one p");
    if (pattern != "random" && boundary != Boundary::Zero)
      fail(Errc::BadConfig, "seed patterns are defined on zero-boundary boxes");
    if (pattern_k < 1) fail(Errc::BadConfig, "pattern_k must be >= 1");
    if (pattern == "parallel-lines" && pattern_spacing < 1)
      fail(Errc::BadConfig, "pattern_spacing must be >= 1");
    if (pattern_orient != "horizontal" && pattern_orient != "vertical")
      fail(Errc::BadConfig, "pattern_orient must be horizontal or vertical");
    if (t_max < 0) fail(Errc::BadConfig, "t_max must be >= 0");
  }
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known = {
      "kind",      "zeroset",  "rho",       "p",         "p_grid",        "trials",
      "t_max",     "t_max_cap", "n",        "n_min",     "n_max",         "boundary",
      "seed",      "memory_budget",         "threads",   "pattern",       "pattern_k",
      "pattern_spacing",        "pattern_orient",        "shade_period"};
  if (!j.is_object()) fail(Errc::BadConfig, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      fail(Errc::BadConfig, "unknown config key: '" + it.key() + "'");
  ExperimentConfig c;
  try {
    if (!j.contains("kind")) fail(Errc::BadConfig, "config needs a 'kind'");
    c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (!j.contains("zeroset")) fail(Errc::BadConfig, "config needs a 'zeroset'");
    const auto& zs = j.at("zeroset");
    if (zs.is_string()) {
      c.zero_set = ZeroSet::parse(zs.get<std::string>());
    } else if (zs.is_array()) {
      std::vector<Width> rows;
      for (const auto& e : zs) {
        if (e.is_string() && e.get<std::string>() == "inf")
          rows.push_back(kInfWidth);
        else
          rows.push_back(e.get<Width>());
      }
      c.zero_set = ZeroSet::from_row_widths(rows);
    } else {
      fail(Errc::BadConfig, "'zeroset' must be a string or an array of widths");
    }
    if (j.contains("rho")) c.rho = j.at("rho").get<uint32_t>();
    if (j.contains("p") && j.contains("p_grid"))
      fail(Errc::BadConfig, "give 'p' or 'p_grid', not both");
    if (j.contains("p")) c.p_grid = {j.at("p").get<double>()};
    if (j.contains("p_grid")) c.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (j.contains("trials")) c.trials = j.at("trials").get<uint32_t>();
    if (j.contains("t_max")) c.t_max = j.at("t_max").get<int64_t>();
    if (j.contains("t_max_cap")) c.t_max_cap = j.at("t_max_cap").get<int64_t>();
    else if (j.contains("t_max")) c.t_max_cap = std::max(c.t_max, c.t_max_cap);
    if (j.contains("n")) c.n = j.at("n").get<uint32_t>();
    if (j.contains("n_min")) c.n_min = j.at("n_min").get<uint32_t>();
    if (j.contains("n_max")) c.n_max = j.at("n_max").get<uint32_t>();
    if (j.contains("boundary")) c.boundary = parse_boundary(j.at("boundary").get<std::string>());
    if (j.contains("seed")) c.master_seed = j.at("seed").get<uint64_t>();
    if (j.contains("memory_budget")) c.memory_budget = j.at("memory_budget").get<uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<uint32_t>();
    if (j.contains("pattern")) c.pattern = j.at("pattern").get<std::string>();
    if (j.contains("pattern_k")) c.pattern_k = j.at("pattern_k").get<uint32_t>();
    if (j.contains("pattern_spacing")) c.pattern_spacing = j.at("pattern_spacing").get<uint32_t>();
    if (j.contains("pattern_orient")) c.pattern_orient = j.at("pattern_orient").get<std::string>();
    if (j.contains("shade_period")) c.shade_period = j.at("shade_period").get<int>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::BadConfig, std::string("config: ") + e.what());
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["kind"] = experiment_kind_name(kind);
  j["zeroset"] = zero_set.to_text();
  j["rho"] = rho;
  j["p_grid"] = p_grid;
  j["trials"] = trials;
  j["t_max"] = t_max;
  j["t_max_cap"] = t_max_cap;
  j["n"] = n;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["boundary"] = boundary_name(boundary);
  j["seed"] = master_seed;
  j["memory_budget"] = memory_budget;
  j["threads"] = threads;
  if (kind == ExperimentKind::Simulate) {
    j["pattern"] = pattern;
    j["pattern_k"] = pattern_k;
    j["pattern_spacing"] = pattern_spacing;
    j["pattern_orient"] = pattern_orient;
    j["shade_period"] = shade_period;
  }
  return j;
}

uint32_t resolve_thread_count(uint32_t requested) {
  uint32_t count = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("YDGROW_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && cap >= 1) count = std::min<uint32_t>(count, uint32_t(cap));
  }
  return std::max(1u, count);
}

void parallel_for(uint32_t count, uint32_t threads, const std::function<void(uint32_t)>& fn) {
  threads = std::max(1u, std::min(threads, count));
  if (threads <= 1) {
    for (uint32_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<uint32_t> next{0};
  std::atomic<bool> bail{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (!bail.load(std::memory_order_relaxed)) {
      uint32_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        bail.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (uint32_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

TrialRow base_row(const ExperimentConfig& cfg, const char* boundary) {
  TrialRow r;
  r.experiment = experiment_kind_name(cfg.kind);
  r.zeroset = cfg.zero_set.to_text();
  r.rho = cfg.rho;
  r.boundary = boundary;
  return r;
}

void sort_rows(std::vector<TrialRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const TrialRow& a, const TrialRow& b) {
    return std::tie(a.p, a.n, a.trial) < std::tie(b.p, b.n, b.trial);
  });
}

// Median with censored values ranked above every finite one; requires a
// strictly uncensored majority so both middle ranks are finite.
double censored_median(const std::vector<CensoredTime>& sample) {
  std::vector<int64_t> v;
  v.reserve(sample.size());
  for (const CensoredTime& t : sample) v.push_back(t.censored ? INT64_MAX : t.value);
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  if (n % 2) return double(v[n / 2]);
  return 0.5 * (double(v[n / 2 - 1]) + double(v[n / 2]));
}

ExperimentResult run_estimate_t(const ExperimentConfig& cfg, const Rule& rule, uint32_t workers) {
  ExperimentResult result;
  nlohmann::json per_p = nlohmann::json::array();
  const uint32_t trials = cfg.trials;
  std::vector<std::vector<CensoredTime>> samples(cfg.p_grid.size());
  std::vector<int64_t> horizons(cfg.p_grid.size(), 0);
  for (size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    double p = cfg.p_grid[pi];
    auto started = Clock::now();
    int64_t horizon = cfg.t_max;
    if (cone_memory_bytes(rule, horizon) > cfg.memory_budget)
      fail(Errc::MemoryBudgetExceeded,
           "t_max " + std::to_string(horizon) + " needs " +
               std::to_string(cone_memory_bytes(rule, horizon)) + " bytes per trial");
    std::vector<CensoredTime>& sample = samples[pi];
    bool budget_capped = false;
    uint32_t censored = 0;
    while (true) {
      sample.assign(trials, CensoredTime{});
      parallel_for(trials, workers, [&](uint32_t i) {
        uint64_t seed = derive_seed(cfg.master_seed, uint64_t(pi) * trials + i);
        sample[i] = first_occupation_time(rule, p, horizon, seed, cfg.memory_budget);
      });
      censored = 0;
      for (const CensoredTime& t : sample) censored += t.censored ? 1 : 0;
      if (2 * (trials - censored) > trials) break;
      if (horizon >= cfg.t_max_cap) break;
      int64_t doubled = std::min(horizon * 2, cfg.t_max_cap);
      if (cone_memory_bytes(rule, doubled) > cfg.memory_budget) {
        budget_capped = true;
        break;
      }
      horizon = doubled;
    }
    horizons[pi] = horizon;
    MedianAggregate agg;
    agg.p = p;
    agg.trials = trials;
    agg.censored = censored;
    agg.t_max = horizon;
    if (2 * (trials - censored) > trials) agg.median_T = censored_median(sample);
    result.medians.push_back(agg);
    nlohmann::json entry;
    entry["p"] = p;
    entry["trials"] = trials;
    entry["censored"] = censored;
    entry["t_max"] = horizon;
    entry["budget_capped"] = budget_capped;
    if (agg.median_T)
      entry["median_T"] = *agg.median_T;
    else
      entry["median_T"] = nullptr;
    entry["wall_ms"] = ms_since(started);
    per_p.push_back(entry);
  }
  for (size_t pi = 0; pi < cfg.p_grid.size(); ++pi) {
    for (uint32_t i = 0; i < trials; ++i) {
      TrialRow r = base_row(cfg, "zero");
      r.p = cfg.p_grid[pi];
      r.trial = i;
      r.seed = derive_seed(cfg.master_seed, uint64_t(pi) * trials + i);
      r.censored = samples[pi][i].censored;
      r.T = r.censored ? -1 : samples[pi][i].value;
      r.t_max = horizons[pi];
      result.trials.push_back(std::move(r));
    }
  }
  sort_rows(result.trials);

  std::vector<double> fit_p, fit_T;
  for (const MedianAggregate& m : result.medians)
    if (m.median_T && *m.median_T > 0.0) {
      fit_p.push_back(m.p);
      fit_T.push_back(*m.median_T);
    }
  if (cfg.kind == ExperimentKind::EstimatePower && fit_p.size() < 3)
    fail(Errc::DegenerateFit,
         "only " + std::to_string(fit_p.size()) +
             " p values produced positive medians; raise t_max_cap or adjust the grid");
  if (fit_p.size() >= 3) result.fit = power_fit(fit_p, fit_T);

  std::string agg = "# ydgrow medians v1\n";
  agg += "experiment,zeroset,rho,boundary,p,trials,censored,median_T,t_max\n";
  for (const MedianAggregate& m : result.medians) {
    agg += experiment_kind_name(cfg.kind);
    agg += ',' + cfg.zero_set.to_text() + ',' + std::to_string(cfg.rho) + ",zero,";
    agg += format_double(m.p) + ',' + std::to_string(m.trials) + ',' +
           std::to_string(m.censored) + ',';
    agg += m.median_T ? format_double(*m.median_T) : std::string();
    agg += ',' + std::to_string(m.t_max) + '\n';
  }
  result.aggregates_csv = std::move(agg);
  result.summary["per_p"] = per_p;
  if (result.fit) {
    result.summary["fit"] = {{"slope", result.fit->slope},
                             {"intercept", result.fit->intercept},
                             {"slope_stderr", result.fit->slope_stderr}};
  } else {
    result.summary["fit"] = nullptr;
  }
  return result;
}

ExperimentResult run_estimate_lc(const ExperimentConfig& cfg, const Rule& rule, uint32_t workers) {
  ExperimentResult result;
  std::vector<LcEstimate> estimates(cfg.p_grid.size());
  std::vector<uint64_t> wall(cfg.p_grid.size(), 0);
  parallel_for(uint32_t(cfg.p_grid.size()), workers, [&](uint32_t pi) {
    auto started = Clock::now();
    estimates[pi] = critical_length(rule, cfg.p_grid[pi], cfg.trials, cfg.n_min, cfg.n_max,
                                    derive_seed(cfg.master_seed, pi));
    wall[pi] = ms_since(started);
  });
  std::string agg = "# ydgrow probes v1\n";
  agg += "experiment,zeroset,rho,boundary,p,n,trials,spanned,p_hat,ci_lo,ci_hi,n_star\n";
  nlohmann::json per_p = nlohmann::json::array();
  std::vector<size_t> order(cfg.p_grid.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return cfg.p_grid[a] < cfg.p_grid[b]; });
  for (size_t oi : order) {
    const LcEstimate& lc = estimates[oi];
    double p = cfg.p_grid[oi];
    for (const auto& [n, est] : lc.details) {
      for (uint32_t i = 0; i < est.trials; ++i) {
        TrialRow r = base_row(cfg, "zero");
        r.p = p;
        r.n = n;
        r.trial = i;
        r.seed = est.details[i].seed;
        r.T = est.details[i].spanned ? est.details[i].time : -1;
        r.censored = false;
        result.trials.push_back(std::move(r));
      }
      agg += "estimate-lc," + cfg.zero_set.to_text() + ',' + std::to_string(cfg.rho) + ",zero,";
      agg += format_double(p) + ',' + std::to_string(n) + ',' + std::to_string(est.trials) +
             ',' + std::to_string(est.spanned) + ',';
      agg += format_double(est.p_hat) + ',' + format_double(est.ci.lo) + ',' +
             format_double(est.ci.hi) + ',' + std::to_string(lc.n_star) + '\n';
    }
    nlohmann::json probes = nlohmann::json::array();
    for (const ProbePoint& pp : lc.probe_points)
      probes.push_back({{"n", pp.n},
                        {"p_hat", pp.p_hat},
                        {"ci_lo", pp.ci.lo},
                        {"ci_hi", pp.ci.hi}});
    per_p.push_back({{"p", p},
                     {"n_star", lc.n_star},
                     {"trials_per_n", lc.trials_per_n},
                     {"probes", probes},
                     {"wall_ms", wall[oi]}});
    result.lc.emplace_back(p, lc);
  }
  sort_rows(result.trials);
  result.aggregates_csv = std::move(agg);
  result.summary["per_p"] = per_p;
  return result;
}

ExperimentResult run_density(const ExperimentConfig& cfg, const Rule& rule, uint32_t workers) {
  ExperimentResult result;
  const uint32_t trials = cfg.trials;
  uint32_t total = uint32_t(cfg.p_grid.size()) * trials;
  std::vector<double> densities(total, 0.0);
  std::vector<int64_t> fix_time(total, 0);
  auto started = Clock::now();
  parallel_for(total, workers, [&](uint32_t gi) {
    size_t pi = gi / trials;
    uint64_t seed = derive_seed(cfg.master_seed, gi);
    SplitMix64 rng(seed);
    Configuration box = random_configuration(cfg.n, cfg.n, cfg.boundary, cfg.p_grid[pi], rng);
    Outcome out = run(box, rule, StopCondition::until_fixed());
    densities[gi] = out.final_density;
    fix_time[gi] = out.stop_time;
  });
  uint64_t wall = ms_since(started);
  std::vector<size_t> order(cfg.p_grid.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return cfg.p_grid[a] < cfg.p_grid[b]; });
  std::string agg = "# ydgrow density v1\n";
  agg += "experiment,zeroset,rho,boundary,p,n,trials,mean_density,min_density,max_density\n";
  nlohmann::json per_p = nlohmann::json::array();
  for (size_t pi : order) {
    double p = cfg.p_grid[pi];
    double mean = 0.0, lo = 1.0, hi = 0.0;
    nlohmann::json list = nlohmann::json::array();
    for (uint32_t i = 0; i < trials; ++i) {
      uint32_t gi = uint32_t(pi) * trials + i;
      mean += densities[gi];
      lo = std::min(lo, densities[gi]);
      hi = std::max(hi, densities[gi]);
      list.push_back(densities[gi]);
      TrialRow r = base_row(cfg, boundary_name(cfg.boundary));
      r.p = p;
      r.n = cfg.n;
      r.trial = i;
      r.seed = derive_seed(cfg.master_seed, gi);
      r.T = fix_time[gi];
      result.trials.push_back(std::move(r));
    }
    mean /= double(trials);
    agg += "density," + cfg.zero_set.to_text() + ',' + std::to_string(cfg.rho) + ',' +
           boundary_name(cfg.boundary) + ',';
    agg += format_double(p) + ',' + std::to_string(cfg.n) + ',' + std::to_string(trials) + ',';
    agg += format_double(mean) + ',' + format_double(lo) + ',' + format_double(hi) + '\n';
    per_p.push_back({{"p", p}, {"n", cfg.n}, {"trials", trials},
                     {"mean_density", mean}, {"densities", list}});
  }
  sort_rows(result.trials);
  result.aggregates_csv = std::move(agg);
  result.summary["per_p"] = per_p;
  result.summary["wall_ms_trials"] = wall;
  return result;
}

ExperimentResult run_simulate(const ExperimentConfig& cfg, const Rule& rule) {
  ExperimentResult result;
  Orientation orient =
      cfg.pattern_orient == "vertical" ? Orientation::Vertical : Orientation::Horizontal;
  uint64_t seed = derive_seed(cfg.master_seed, 0);
  std::optional<Configuration> box;
  if (cfg.pattern == "random") {
    SplitMix64 rng(seed);
    box = random_configuration(cfg.n, cfg.n, cfg.boundary, cfg.p_grid[0], rng);
  } else if (cfg.pattern == "packed-strip") {
    box = packed_strip(rule, cfg.n);
  } else if (cfg.pattern == "adjacent-lines") {
    box = filled_adjacent_lines(cfg.pattern_k, orient, cfg.n);
  } else if (cfg.pattern == "diagonal") {
    box = diagonal_nucleus(cfg.pattern_k, cfg.n);
  } else {
    box = parallel_lines(cfg.pattern_k, cfg.pattern_spacing, orient, cfg.n);
  }
  auto started = Clock::now();
  Outcome out =
      run(*box, rule, StopCondition::until_fixed(cfg.t_max > 0 ? cfg.t_max : StopCondition::kNoLimit));
  uint64_t wall = ms_since(started);
  TrialRow r = base_row(cfg, boundary_name(cfg.boundary));
  r.p = cfg.pattern == "random" ? cfg.p_grid[0] : 0.0;
  r.n = cfg.n;
  r.trial = 0;
  r.seed = seed;
  r.T = out.stop_time;
  r.censored = out.stop_reason == StopReason::TimeLimit;
  r.t_max = cfg.t_max;
  result.trials.push_back(std::move(r));
  std::string agg = "# ydgrow simulate v1\n";
  agg += "experiment,zeroset,rho,boundary,p,n,stop_reason,stop_time,newly_occupied,final_density\n";
  agg += "simulate," + cfg.zero_set.to_text() + ',' + std::to_string(cfg.rho) + ',' +
         boundary_name(cfg.boundary) + ',';
  agg += format_double(result.trials[0].p) + ',' + std::to_string(cfg.n) + ',';
  agg += stop_reason_name(out.stop_reason);
  agg += ',' + std::to_string(out.stop_time) + ',' + std::to_string(out.newly_occupied_total) +
         ',' + format_double(out.final_density) + '\n';
  result.aggregates_csv = std::move(agg);
  result.summary["stop_reason"] = stop_reason_name(out.stop_reason);
  result.summary["stop_time"] = out.stop_time;
  result.summary["newly_occupied"] = out.newly_occupied_total;
  result.summary["final_density"] = out.final_density;
  result.summary["wall_ms_run"] = wall;
  result.final_state = std::move(box);
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Rule rule(cfg.zero_set, cfg.rho);
  uint32_t workers = resolve_thread_count(cfg.threads);
  auto started = Clock::now();
  ExperimentResult result;
  switch (cfg.kind) {
    case ExperimentKind::EstimateT:
    case ExperimentKind::EstimatePower:
      result = run_estimate_t(cfg, rule, workers);
      break;
    case ExperimentKind::EstimateLc:
      result = run_estimate_lc(cfg, rule, workers);
      break;
    case ExperimentKind::Density:
      result = run_density(cfg, rule, workers);
      break;
    case ExperimentKind::Simulate:
      result = run_simulate(cfg, rule);
      break;
  }
  result.summary["kind"] = experiment_kind_name(cfg.kind);
  result.summary["config"] = cfg.to_json();
  result.summary["threads"] = workers;
  result.summary["rows"] = result.trials.size();
  result.summary["wall_ms"] = ms_since(started);
  return result;
}

}  // namespace ydgrow
