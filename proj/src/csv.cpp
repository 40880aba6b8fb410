#include "ydgrow/csv.hpp"

#include <charconv>
#include <cstdio>

#include "ydgrow/error.hpp"

namespace ydgrow {

namespace {

constexpr std::string_view kHeader =
    "experiment,zeroset,rho,boundary,p,n,trial,seed,T,censored,t_max,wall_ms";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_int(std::string_view s, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(Errc::ParseError, std::string("bad ") + what + ": '" + std::string(s) + "'");
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) fail(Errc::ParseError, "double formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(Errc::ParseError, "bad double: '" + std::string(s) + "'");
  return value;
}

std::string write_trials_csv(const std::vector<TrialRow>& rows) {
  std::string out;
  out += kTrialsCsvVersion;
  out += '\n';
  out += kHeader;
  out += '\n';
  for (const TrialRow& r : rows) {
    out += r.experiment;
    out += ',';
    out += r.zeroset;
    out += ',';
    out += std::to_string(r.rho);
    out += ',';
    out += r.boundary;
    out += ',';
    out += format_double(r.p);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.T);
    out += ',';
    out += r.censored ? '1' : '0';
    out += ',';
    out += std::to_string(r.t_max);
    out += ',';
    out += std::to_string(r.wall_ms);
    out += '\n';
  }
  return out;
}

std::vector<TrialRow> parse_trials_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.size() < 2) fail(Errc::ParseError, "missing CSV header");
  if (lines[0] != kTrialsCsvVersion)
    fail(Errc::ParseError, "unsupported CSV version: '" + std::string(lines[0]) + "'");
  if (lines[1] != kHeader) fail(Errc::ParseError, "unexpected CSV columns");
  std::vector<TrialRow> rows;
  for (size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 12)
      fail(Errc::ParseError, "expected 12 fields, got " + std::to_string(f.size()));
    TrialRow r;
    r.experiment = std::string(f[0]);
    r.zeroset = std::string(f[1]);
    r.rho = parse_int<uint32_t>(f[2], "rho");
    r.boundary = std::string(f[3]);
    r.p = parse_double(f[4]);
    r.n = parse_int<uint32_t>(f[5], "n");
    r.trial = parse_int<uint32_t>(f[6], "trial");
    r.seed = parse_int<uint64_t>(f[7], "seed");
    r.T = parse_int<int64_t>(f[8], "T");
    if (f[9] == "1")
      r.censored = true;
    else if (f[9] == "0")
      r.censored = false;
    else
      fail(Errc::ParseError, "bad censored flag: '" + std::string(f[9]) + "'");
    r.t_max = parse_int<int64_t>(f[10], "t_max");
    r.wall_ms = parse_int<uint64_t>(f[11], "wall_ms");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ydgrow
