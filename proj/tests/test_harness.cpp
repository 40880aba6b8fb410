#include <string>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "ydgrow/csv.hpp"
#include "ydgrow/engine.hpp"
#include "ydgrow/experiment.hpp"
#include "ydgrow/render.hpp"
#include "ydgrow/verify.hpp"

using namespace ydgrow;
using ydgrow::testing::code_of;

namespace {

TrialRow sample_row() {
  TrialRow r;
  r.experiment = "estimate-t";
  r.zeroset = "3 2 1";
  r.rho = 3;
  r.boundary = "zero";
  r.p = 0.05;
  r.n = 0;
  r.trial = 4;
  r.seed = 0xdeadbeefcafeull;
  r.T = 17;
  r.censored = false;
  r.t_max = 256;
  r.wall_ms = 0;
  return r;
}

}  // namespace

TEST_CASE("trial csv layout") {
  std::string text = write_trials_csv({sample_row()});
  CHECK(text.substr(0, 19) == "# ydgrow trials v1\n");
  std::string header = text.substr(19, text.find('\n', 19) - 19);
  CHECK(header == "experiment,zeroset,rho,boundary,p,n,trial,seed,T,censored,t_max,wall_ms");
  CHECK(text.find("estimate-t,3 2 1,3,zero,0.05,0,4,244837814094590,17,0,256,0") !=
        std::string::npos);
}

TEST_CASE("trial csv round trip") {
  std::vector<TrialRow> rows = {sample_row()};
  rows.push_back(sample_row());
  rows[1].p = 1.0 / 3.0;
  rows[1].T = -1;
  rows[1].censored = true;
  rows[1].zeroset = "inf 2";
  CHECK(parse_trials_csv(write_trials_csv(rows)) == rows);
  CHECK(parse_trials_csv(write_trials_csv({})).empty());
}

TEST_CASE("trial csv rejects malformed input") {
  std::string good = write_trials_csv({sample_row()});
  CHECK(code_of([&] { parse_trials_csv("# other v9\n" + good.substr(19)); }) == Errc::ParseError);
  CHECK(code_of([&] { parse_trials_csv(good + "a,b,c\n"); }) == Errc::ParseError);
  std::string bad_bool = good;
  bad_bool.replace(bad_bool.rfind(",0,256,0"), 8, ",2,256,0");
  CHECK(code_of([&] { parse_trials_csv(bad_bool); }) == Errc::ParseError);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(parse_double(format_double(1e-12)) == 1e-12);
  CHECK(parse_double("0.125") == 0.125);
  CHECK(code_of([] { parse_double("abc"); }) == Errc::ParseError);
}

TEST_CASE("experiment config json") {
  nlohmann::json j = {
      {"kind", "estimate-t"}, {"zeroset", "2 1"},   {"rho", 2},
      {"p_grid", {0.2, 0.1}}, {"trials", 4},        {"t_max", 8},
      {"t_max_cap", 64},      {"seed", 77},         {"threads", 2},
  };
  ExperimentConfig cfg = ExperimentConfig::from_json(j);
  CHECK(cfg.kind == ExperimentKind::EstimateT);
  CHECK(cfg.zero_set == bootstrap_zero_set(2));
  CHECK(cfg.p_grid == std::vector<double>{0.2, 0.1});
  CHECK(cfg.master_seed == 77);
  cfg.validate();

  ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());

  nlohmann::json typo = j;
  typo["trails"] = 9;
  CHECK(code_of([&] { ExperimentConfig::from_json(typo); }) == Errc::BadConfig);
  nlohmann::json both = j;
  both["p"] = 0.5;
  CHECK(code_of([&] { ExperimentConfig::from_json(both); }) == Errc::BadConfig);
  nlohmann::json arr = j;
  arr["zeroset"] = {"inf", 2};
  CHECK(ExperimentConfig::from_json(arr).zero_set == ZeroSet::from_row_widths({kInfWidth, 2}));
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EstimateT;
  cfg.zero_set = bootstrap_zero_set(2);
  cfg.rho = 2;
  cfg.p_grid = {0.1};
  cfg.validate();

  ExperimentConfig bad = cfg;
  bad.p_grid = {0.0};
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad = cfg;
  bad.p_grid = {};
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad = cfg;
  bad.rho = 1;  // zero-set height exceeds the reach
  CHECK(code_of([&] { bad.validate(); }) == Errc::HeightExceedsRange);
  bad = cfg;
  bad.kind = ExperimentKind::EstimatePower;
  bad.p_grid = {0.1, 0.2, 0.05};  // must decrease strictly
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad.p_grid = {0.2, 0.1};
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad = cfg;
  bad.kind = ExperimentKind::EstimateLc;
  bad.n_min = 32;
  bad.n_max = 16;
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad = cfg;
  bad.kind = ExperimentKind::Density;
  bad.boundary = Boundary::Periodic;
  bad.n = 4;  // torus smaller than the cross
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad = cfg;
  bad.kind = ExperimentKind::Simulate;
  bad.pattern = "mystery";
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
  bad.pattern = "random";
  bad.p_grid = {0.2, 0.1};
  CHECK(code_of([&] { bad.validate(); }) == Errc::BadConfig);
}

TEST_CASE("estimate-t experiment") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EstimateT;
  cfg.zero_set = bootstrap_zero_set(1);
  cfg.rho = 1;
  cfg.p_grid = {0.4, 0.2};
  cfg.trials = 9;
  cfg.t_max = 32;
  cfg.t_max_cap = 64;
  cfg.master_seed = 5;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.trials.size() == 18);
  CHECK(res.medians.size() == 2);
  CHECK(res.medians[0].p == 0.4);  // aggregates keep the grid order
  CHECK(res.medians[1].p == 0.2);
  CHECK(res.trials.front().p == 0.2);  // trial rows sort by (p, n, trial)
  for (const TrialRow& r : res.trials) {
    CHECK(r.experiment == "estimate-t");
    CHECK(r.wall_ms == 0);
    CHECK((r.censored ? r.T == -1 : r.T >= 0));
  }
  for (const MedianAggregate& m : res.medians)
    if (m.median_T) CHECK(*m.median_T >= 0.0);
  CHECK(res.aggregates_csv.substr(0, 20) == "# ydgrow medians v1\n");
  CHECK(res.summary.contains("per_p"));
  CHECK(res.summary["kind"] == "estimate-t");
}

TEST_CASE("estimate-power needs enough uncensored medians") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EstimatePower;
  cfg.zero_set = bootstrap_zero_set(1);
  cfg.rho = 1;
  cfg.p_grid = {0.2, 0.1, 0.05};  // high enough that medians stay positive
  cfg.trials = 25;
  cfg.t_max = 64;
  cfg.t_max_cap = 128;
  cfg.master_seed = 5;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.fit.has_value());
  CHECK(res.fit->slope > 0.0);

  cfg.p_grid = {3e-9, 2e-9, 1e-9};  // nothing finishes: no fit, only censoring
  cfg.t_max = 2;
  cfg.t_max_cap = 4;
  CHECK(code_of([&] { run_experiment(cfg); }) == Errc::DegenerateFit);
}

TEST_CASE("density and simulate experiments") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Density;
  cfg.zero_set = line_zero_set(2, 2);
  cfg.rho = 2;
  cfg.p_grid = {0.3};
  cfg.trials = 5;
  cfg.n = 12;
  cfg.master_seed = 6;
  ExperimentResult res = run_experiment(cfg);
  CHECK(res.trials.size() == 5);
  CHECK(res.aggregates_csv.substr(0, 20) == "# ydgrow density v1\n");
  for (const TrialRow& r : res.trials) CHECK(r.n == 12);

  ExperimentConfig sim;
  sim.kind = ExperimentKind::Simulate;
  sim.zero_set = bootstrap_zero_set(1);
  sim.rho = 1;
  sim.pattern = "diagonal";
  sim.pattern_k = 2;
  sim.n = 10;
  sim.t_max = 0;
  ExperimentResult one = run_experiment(sim);
  CHECK(one.final_state.has_value());
  CHECK(one.final_state->full());  // a diagonal pair seeds the cross rule
  CHECK(one.trials.size() == 1);
  CHECK(one.summary["stop_reason"] == "fixed");
}

TEST_CASE("worker count does not change results") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EstimateT;
  cfg.zero_set = line_zero_set(2, 1);
  cfg.rho = 2;
  cfg.p_grid = {0.35, 0.2};
  cfg.trials = 6;
  cfg.t_max = 16;
  cfg.t_max_cap = 32;
  cfg.master_seed = 31;
  cfg.threads = 1;
  ExperimentResult serial = run_experiment(cfg);
  cfg.threads = 4;
  ExperimentResult parallel = run_experiment(cfg);
  CHECK(write_trials_csv(serial.trials) == write_trials_csv(parallel.trials));
  CHECK(serial.aggregates_csv == parallel.aggregates_csv);
}

TEST_CASE("snapshot rendering") {
  Configuration c(2, 2, Boundary::Zero);
  c.occupy(0, 0, 0);
  Image img = render_snapshot(c);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  // Row h-1 renders on top: white, white / black, white.
  std::vector<uint8_t> want = {255, 255, 255, 255, 255, 255, 0, 0, 0, 255, 255, 255};
  CHECK(img.rgb == want);
  std::string ppm = encode_ppm(img);
  CHECK(ppm.substr(0, 11) == "P6\n2 2\n255\n");
  CHECK(ppm.size() == 11 + 12);

  Configuration shades(3, 1, Boundary::Zero);
  shades.occupy(0, 0, 1);
  shades.occupy(1, 0, 2);
  Image gi = render_snapshot(shades, 8);
  CHECK(gi.rgb[0] == 64);        // birth 1: base grey
  CHECK(gi.rgb[3] == 64 + 160 / 7);  // birth 2: one shade step
  CHECK(gi.rgb[6] == 255);       // unoccupied

  CHECK(code_of([&] { render_snapshot(shades, 1); }) == Errc::BadConfig);
}

TEST_CASE("verification suites catch a broken engine") {
  SuiteParams params;
  params.scale = 1;

  params.step_override = [](Configuration& cfg, const Rule& rule) -> uint64_t {
    int64_t t = cfg.max_birth_time() + 1;
    uint64_t added = step_naive(cfg, rule);
    for (uint32_t y = 0; y < cfg.height(); ++y)
      for (uint32_t x = 0; x < cfg.width(); ++x)
        if (!cfg.get(x, y)) {
          cfg.occupy(x, y, t);  // one spurious cell per step
          return added + 1;
        }
    return added;
  };
  SuiteResult broken = run_suite("oracle-equivalence", params);
  CHECK(!broken.passed());
  CHECK(broken.failures > 0);

  params.step_override = [](Configuration& cfg, const Rule& rule) {
    return step_naive(cfg, rule);
  };
  SuiteResult clean = run_suite("oracle-equivalence", params);
  CHECK(clean.passed());

  CHECK(code_of([&] { run_suite("no-such-suite", params); }) == Errc::BadConfig);
  CHECK(all_suites().size() == 17);
}
