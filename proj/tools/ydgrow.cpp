// Command line driver: experiments, rendering, verification suites, and the
// exact power tables. Exit codes: 0 success, 1 failed invariant or runtime
// error, 2 bad configuration or usage, 3 resource limit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ydgrow/csv.hpp"
#include "ydgrow/error.hpp"
#include "ydgrow/experiment.hpp"
#include "ydgrow/render.hpp"
#include "ydgrow/theory.hpp"
#include "ydgrow/verify.hpp"

namespace {

using namespace ydgrow;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::BadConfig:
    case Errc::ParseError:
      return 2;
    case Errc::MemoryBudgetExceeded:
      return 3;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::BadConfig, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) fail(Errc::BadConfig, "cannot write '" + path + "'");
}

struct CliOpts {
  std::string config_path;
  std::string zeroset;
  std::string boundary;
  std::string pattern;
  std::string pattern_orient;
  std::string out;
  std::string load_path;
  std::string ppm_path;
  std::vector<double> ps;
  uint64_t seed = 0;
  uint64_t budget = 0;
  uint32_t rho = 0;
  uint32_t trials = 0;
  uint32_t n = 0;
  uint32_t n_min = 0;
  uint32_t n_max = 0;
  uint32_t threads = 0;
  uint32_t pattern_k = 0;
  uint32_t pattern_spacing = 0;
  int64_t t_max = 0;
  int64_t t_max_cap = 0;
  int shade = 0;
};

void add_experiment_options(CLI::App* cmd, CliOpts& o, bool with_patterns) {
  cmd->add_option("--config", o.config_path,
                  "JSON config file; flags given here override its values")
      ->check(CLI::ExistingFile);
  cmd->add_option("--zeroset", o.zeroset,
                  "row widths bottom-up, e.g. \"3 2 1\" or \"inf 2\"");
  cmd->add_option("--rho", o.rho, "cross arm reach");
  cmd->add_option("-p,--p", o.ps, "occupation probability; repeat for a grid");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--t-max", o.t_max, "initial time horizon (simulate: step cap, 0 = none)");
  cmd->add_option("--t-max-cap", o.t_max_cap, "largest horizon the doubling loop may reach");
  cmd->add_option("--n", o.n, "box side");
  cmd->add_option("--n-min", o.n_min, "smallest box in the critical-length bracket");
  cmd->add_option("--n-max", o.n_max, "largest box in the critical-length bracket");
  cmd->add_option("--boundary", o.boundary, "zero | periodic")
      ->check(CLI::IsMember({"zero", "periodic"}));
  cmd->add_option("--seed", o.seed, "master seed; trial seeds derive from it");
  cmd->add_option("--memory-budget", o.budget, "growth cone budget in bytes");
  cmd->add_option("--threads", o.threads, "worker count (0 = hardware)");
  cmd->add_option("--shade-period", o.shade, "grey cycle length for rendered snapshots");
  if (with_patterns) {
    cmd->add_option("--pattern", o.pattern,
                    "initial state: random | packed-strip | adjacent-lines | diagonal | "
                    "parallel-lines")
        ->check(CLI::IsMember(
            {"random", "packed-strip", "adjacent-lines", "diagonal", "parallel-lines"}));
    cmd->add_option("--pattern-k", o.pattern_k, "line count / strip width for seeded patterns");
    cmd->add_option("--pattern-spacing", o.pattern_spacing, "gap for parallel-lines");
    cmd->add_option("--pattern-orient", o.pattern_orient, "horizontal | vertical")
        ->check(CLI::IsMember({"horizontal", "vertical"}));
  }
  cmd->add_option("-o,--out", o.out,
                  "output prefix; writes <out>.trials.csv, <out>.aggregates.csv, "
                  "<out>.summary.json (and <out>.ppm where a snapshot exists)");
}

ExperimentConfig build_config(const CLI::App* cmd, const CliOpts& o, ExperimentKind kind) {
  ExperimentConfig cfg;
  if (cmd->count("--config")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.config_path));
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::BadConfig, "config '" + o.config_path + "': " + e.what());
    }
    cfg = ExperimentConfig::from_json(j);
  }
  cfg.kind = kind;  // the subcommand, not the file, decides what runs
  if (cmd->count("--zeroset")) cfg.zero_set = ZeroSet::parse(o.zeroset);
  if (cmd->count("--rho")) cfg.rho = o.rho;
  if (!o.ps.empty()) cfg.p_grid = o.ps;
  if (cmd->count("--trials")) cfg.trials = o.trials;
  if (cmd->count("--t-max")) {
    cfg.t_max = o.t_max;
    if (!cmd->count("--t-max-cap")) cfg.t_max_cap = std::max(cfg.t_max, cfg.t_max_cap);
  }
  if (cmd->count("--t-max-cap")) cfg.t_max_cap = o.t_max_cap;
  if (cmd->count("--n")) cfg.n = o.n;
  if (cmd->count("--n-min")) cfg.n_min = o.n_min;
  if (cmd->count("--n-max")) cfg.n_max = o.n_max;
  if (cmd->count("--boundary")) cfg.boundary = parse_boundary(o.boundary);
  if (cmd->count("--seed")) cfg.master_seed = o.seed;
  if (cmd->count("--memory-budget")) cfg.memory_budget = o.budget;
  if (cmd->count("--threads")) cfg.threads = o.threads;
  if (cmd->count("--shade-period")) cfg.shade_period = o.shade;
  // Pattern options exist only on the subcommands that seed configurations.
  auto counted = [&](const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (counted("--pattern")) cfg.pattern = o.pattern;
  if (counted("--pattern-k")) cfg.pattern_k = o.pattern_k;
  if (counted("--pattern-spacing")) cfg.pattern_spacing = o.pattern_spacing;
  if (counted("--pattern-orient")) cfg.pattern_orient = o.pattern_orient;
  return cfg;
}

int run_and_emit(const ExperimentConfig& cfg, const std::string& out) {
  ExperimentResult res = run_experiment(cfg);
  std::cout << res.aggregates_csv;
  if (out.empty()) {
    std::cout << res.summary.dump(2) << "\n";
  } else {
    write_file(out + ".trials.csv", write_trials_csv(res.trials));
    write_file(out + ".aggregates.csv", res.aggregates_csv);
    write_file(out + ".summary.json", res.summary.dump(2) + "\n");
    std::cerr << "wrote " << out << ".trials.csv, " << out << ".aggregates.csv, " << out
              << ".summary.json";
    if (res.final_state) {
      write_ppm(render_snapshot(*res.final_state, cfg.shade_period), out + ".ppm");
      std::cerr << ", " << out << ".ppm";
    }
    std::cerr << "\n";
  }
  return 0;
}

int run_render(const CLI::App* cmd, const CliOpts& o) {
  std::string ppm = o.ppm_path;
  if (ppm.empty() && !o.out.empty()) ppm = o.out + ".ppm";
  if (ppm.empty()) fail(Errc::BadConfig, "render needs --ppm or --out");
  int shade = cmd->count("--shade-period") ? o.shade : 8;
  if (cmd->count("--load")) {
    Configuration cfg = Configuration::load(read_file(o.load_path));
    write_ppm(render_snapshot(cfg, shade), ppm);
    std::cerr << "wrote " << ppm << "\n";
    return 0;
  }
  ExperimentConfig cfg = build_config(cmd, o, ExperimentKind::Simulate);
  ExperimentResult res = run_experiment(cfg);
  if (!res.final_state) fail(Errc::BadConfig, "simulation produced no final state");
  write_ppm(render_snapshot(*res.final_state, cfg.shade_period), ppm);
  std::cout << res.aggregates_csv;
  if (!o.out.empty()) {
    write_file(o.out + ".trials.csv", write_trials_csv(res.trials));
    write_file(o.out + ".aggregates.csv", res.aggregates_csv);
    write_file(o.out + ".summary.json", res.summary.dump(2) + "\n");
  }
  std::cerr << "wrote " << ppm << "\n";
  return 0;
}

int run_verify(const std::vector<std::string>& names, uint32_t scale, uint64_t seed,
               bool list_only) {
  if (list_only) {
    for (const Suite& s : all_suites())
      std::cout << std::left << std::setw(28) << s.name << s.description << "\n";
    return 0;
  }
  SuiteParams params;
  params.scale = scale;
  if (seed) params.seed = seed;
  std::vector<SuiteResult> results;
  if (names.empty()) {
    for (const Suite& s : all_suites()) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteResult r = s.fn(params);
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      results.push_back(r);
      std::cout << (r.passed() ? "ok   " : "FAIL ") << std::left << std::setw(28) << r.name
                << r.checks - r.failures << "/" << r.checks << " checks  " << std::fixed
                << std::setprecision(2) << dt.count() << "s\n";
      for (const std::string& m : r.messages)
        if (!m.empty()) std::cout << "       - " << m << "\n";
    }
  } else {
    for (const std::string& name : names) {
      auto t0 = std::chrono::steady_clock::now();
      SuiteResult r = run_suite(name, params);
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      results.push_back(r);
      std::cout << (r.passed() ? "ok   " : "FAIL ") << std::left << std::setw(28) << r.name
                << r.checks - r.failures << "/" << r.checks << " checks  " << std::fixed
                << std::setprecision(2) << dt.count() << "s\n";
      for (const std::string& m : r.messages)
        if (!m.empty()) std::cout << "       - " << m << "\n";
    }
  }
  uint32_t failed = 0;
  for (const SuiteResult& r : results)
    if (!r.passed()) ++failed;
  std::cout << results.size() << " suites, " << failed << " failed\n";
  return failed ? 1 : 0;
}

std::string power_cell(const PowerSummary& s) {
  if (s.is_exact()) {
    std::string txt = "gamma = " + format_rational(s.exact->value);
    txt += s.exact->kind == PowerKind::PureCritical ? "  (pure)" : "  (critical)";
    return txt;
  }
  return "gamma in [" + format_rational(s.lower->value) + ", " +
         format_rational(s.upper->value) + "]";
}

int run_theory(uint32_t r_max, bool csv) {
  if (csv) {
    std::cout << "# ydgrow theory v1\n";
    std::cout << "section,id,m_hat,kind,gamma_lower,gamma_upper,source\n";
    for (uint32_t r = 1; r <= r_max; ++r) {
      PowerResult g = gamma_bootstrap(r);
      std::cout << "bootstrap," << r << "," << m_hat_bootstrap(r) << ","
                << power_kind_name(g.kind) << "," << format_rational(g.value) << ","
                << format_rational(g.value) << "," << g.source << "\n";
    }
    for (const CatalogEntry& e : small_catalog()) {
      const PowerSummary& s = e.powers;
      std::string lo = format_rational(s.is_exact() ? s.exact->value : s.lower->value);
      std::string hi = format_rational(s.is_exact() ? s.exact->value : s.upper->value);
      std::string kind = s.is_exact() ? power_kind_name(s.exact->kind) : "bounds";
      std::string source = s.is_exact() ? s.exact->source : s.lower->source;
      std::cout << "catalog," << e.zero_set.to_text() << ",," << kind << "," << lo << "," << hi
                << "," << source << "\n";
    }
    return 0;
  }
  std::cout << "triangular zero sets: occupation time ~ p^-gamma\n";
  std::cout << std::right << std::setw(4) << "r" << std::setw(6) << "m" << std::setw(10)
            << "gamma" << "\n";
  for (uint32_t r = 1; r <= r_max; ++r)
    std::cout << std::setw(4) << r << std::setw(6) << m_hat_bootstrap(r) << std::setw(10)
              << format_rational(gamma_bootstrap(r).value) << "\n";
  std::cout << "\nsmall zero sets (row widths bottom-up)\n";
  for (const CatalogEntry& e : small_catalog()) {
    std::string name = "[" + e.zero_set.to_text() + "]";
    std::cout << "  " << std::left << std::setw(10) << name << std::setw(28)
              << power_cell(e.powers);
    const PowerResult* base =
        e.powers.is_exact() ? &*e.powers.exact : &*e.powers.lower;
    std::cout << base->source;
    if (!base->note.empty()) std::cout << "; " << base->note;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth dynamics driven by two-dimensional zero sets"};
  app.set_version_flag("--version", "ydgrow 1.0.0");
  app.require_subcommand(1);

  CliOpts sim_o, et_o, lc_o, pw_o, dn_o, rd_o;
  CLI::App* sim = app.add_subcommand("simulate", "run one growth to fixation or a step cap");
  add_experiment_options(sim, sim_o, true);
  CLI::App* et = app.add_subcommand("estimate-t",
                                    "median first occupation time of the origin over a p grid");
  add_experiment_options(et, et_o, false);
  CLI::App* lc = app.add_subcommand("estimate-lc", "critical box length per p");
  add_experiment_options(lc, lc_o, false);
  CLI::App* pw = app.add_subcommand("estimate-power",
                                    "fit log T against log 1/p over a decreasing p grid");
  add_experiment_options(pw, pw_o, false);
  CLI::App* dn = app.add_subcommand("density", "final density after fixation in a finite box");
  add_experiment_options(dn, dn_o, false);
  CLI::App* rd = app.add_subcommand("render", "write a PPM snapshot of a final state");
  add_experiment_options(rd, rd_o, true);
  rd->add_option("--load", rd_o.load_path, "render a saved configuration dump instead")
      ->check(CLI::ExistingFile);
  rd->add_option("--ppm", rd_o.ppm_path, "snapshot path (default <out>.ppm)");

  std::vector<std::string> suite_names;
  uint32_t suite_scale = 1;
  uint64_t suite_seed = 0;
  bool suite_list = false;
  CLI::App* vf = app.add_subcommand("verify", "run randomized invariant suites");
  vf->add_option("--suite", suite_names, "suite name; repeat for several (default: all)");
  vf->add_option("--scale", suite_scale, "instance multiplier")->check(CLI::PositiveNumber);
  vf->add_option("--seed", suite_seed, "override the suite seed (0 keeps the default)");
  vf->add_flag("--list", suite_list, "list suites and exit");

  uint32_t r_max = 20;
  bool theory_csv = false;
  CLI::App* th = app.add_subcommand("theory", "print the exact power tables");
  th->add_option("--r-max", r_max, "largest triangle size")->check(CLI::PositiveNumber);
  th->add_flag("--csv", theory_csv, "machine readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return run_and_emit(build_config(sim, sim_o, ExperimentKind::Simulate),
                                           sim_o.out);
    if (et->parsed())
      return run_and_emit(build_config(et, et_o, ExperimentKind::EstimateT), et_o.out);
    if (lc->parsed())
      return run_and_emit(build_config(lc, lc_o, ExperimentKind::EstimateLc), lc_o.out);
    if (pw->parsed())
      return run_and_emit(build_config(pw, pw_o, ExperimentKind::EstimatePower), pw_o.out);
    if (dn->parsed())
      return run_and_emit(build_config(dn, dn_o, ExperimentKind::Density), dn_o.out);
    if (rd->parsed()) return run_render(rd, rd_o);
    if (vf->parsed()) return run_verify(suite_names, suite_scale, suite_seed, suite_list);
    if (th->parsed()) return run_theory(r_max, theory_csv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
