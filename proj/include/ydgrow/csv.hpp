#pragma once

// Versioned, fixed-schema CSV for per-trial results. Columns are stable:
//   experiment,zeroset,rho,boundary,p,n,trial,seed,T,censored,t_max,wall_ms
// T = -1 when the trial has no time value (censored or not applicable);
// n = 0 and t_max = 0 when not applicable. wall_ms is always 0 here so that
// identical runs produce byte-identical files; real timings live in the JSON
// summary. Doubles are written in shortest round-trip form.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ydgrow {

inline constexpr std::string_view kTrialsCsvVersion = "# ydgrow trials v1";

struct TrialRow {
  std::string experiment;
  std::string zeroset;  // space-separated row widths, e.g. "3 2 1"
  uint32_t rho = 1;
  std::string boundary;
  double p = 0.0;
  uint32_t n = 0;
  uint32_t trial = 0;
  uint64_t seed = 0;
  int64_t T = -1;
  bool censored = false;
  int64_t t_max = 0;
  uint64_t wall_ms = 0;

  friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

std::string format_double(double x);  // shortest round-trip decimal
double parse_double(std::string_view s);

std::string write_trials_csv(const std::vector<TrialRow>& rows);

// Strict inverse of write_trials_csv. Errors: ParseError.
std::vector<TrialRow> parse_trials_csv(std::string_view text);

}  // namespace ydgrow
