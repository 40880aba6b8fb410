#include "ydgrow/zeroset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ydgrow {

ZeroSet ZeroSet::from_row_widths(std::vector<Width> rows) {
  Width prev = kInfWidth;
  for (size_t v = 0; v < rows.size(); ++v) {
    Width w = rows[v];
    // kInfWidth compares above every finite width, so w > prev also catches a
    // finite row followed by an infinite one.
    bool increases = (prev != kInfWidth) && (w == kInfWidth || w > prev);
    if (increases)
      fail(Errc::NonMonotone, "row widths must be nonincreasing from the bottom row");
    prev = w;
  }
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
  for (Width w : rows)
    if (w == 0) fail(Errc::NonMonotone, "zero-width row below a nonzero row");
  ZeroSet z;
  z.rows_ = std::move(rows);
  return z;
}

Width ZeroSet::max_finite_width() const {
  for (Width w : rows_)
    if (w != kInfWidth) return w;  // rows are nonincreasing; first finite row is widest
  return 0;
}

std::vector<MinimalCount> ZeroSet::minimal_counts() const {
  if (rows_.empty()) return {MinimalCount{0, 0}};
  std::vector<MinimalCount> counts;
  for (uint32_t v = 0; v < rows_.size(); ++v) {
    Width w = rows_[v];
    if (w == kInfWidth) continue;
    if (v == 0 || w < rows_[v - 1]) counts.push_back({w, v});
  }
  counts.push_back({0, height()});
  return counts;
}

ZeroSet ZeroSet::from_minimal_counts(std::vector<MinimalCount> counts) {
  if (counts.empty()) fail(Errc::Inconsistent, "no minimal counts given");
  std::sort(counts.begin(), counts.end(),
            [](const MinimalCount& a, const MinimalCount& b) { return a.v < b.v; });
  for (size_t i = 1; i < counts.size(); ++i) {
    if (counts[i].v == counts[i - 1].v || counts[i].u >= counts[i - 1].u)
      fail(Errc::Inconsistent, "counts must be strictly decreasing in u as v increases");
  }
  if (counts.back().u != 0)
    fail(Errc::Inconsistent, "a count with u = 0 is required (finite height)");
  uint32_t h = counts.back().v;

  std::vector<Width> rows(h, kInfWidth);
  size_t idx = 0;
  Width cur = kInfWidth;
  for (uint32_t v = 0; v < h; ++v) {
    while (idx < counts.size() && counts[idx].v <= v) cur = counts[idx++].u;
    rows[v] = cur;
  }
  ZeroSet z = from_row_widths(std::move(rows));
  if (z.minimal_counts() != counts)
    fail(Errc::Inconsistent, "counts are not the minimal counts of any zero set");
  return z;
}

ZeroSet ZeroSet::normalized(uint32_t rho) const {
  if (rho < 1) fail(Errc::BadConfig, "rho must be positive");
  if (height() > rho) fail(Errc::HeightExceedsRange, "zero-set height exceeds rho");
  ZeroSet z = *this;
  for (Width& w : z.rows_)
    if (w != kInfWidth && w > rho) w = kInfWidth;
  return z;
}

ZeroSet ZeroSet::transposed() const {
  if (has_infinite_row()) fail(Errc::InfiniteWidth, "cannot transpose an infinite row");
  Width w0 = rows_.empty() ? 0 : rows_[0];
  std::vector<Width> cols(w0);
  for (Width u = 0; u < w0; ++u) {
    uint32_t height_u = 0;
    while (height_u < rows_.size() && rows_[height_u] > u) ++height_u;
    cols[u] = height_u;
  }
  ZeroSet z;
  z.rows_ = std::move(cols);
  return z;
}

std::string ZeroSet::to_text() const {
  std::string out;
  for (size_t v = 0; v < rows_.size(); ++v) {
    if (v) out += ' ';
    if (rows_[v] == kInfWidth)
      out += "inf";
    else
      out += std::to_string(rows_[v]);
  }
  return out;
}

ZeroSet ZeroSet::parse(std::string_view text) {
  std::vector<Width> rows;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "inf") {
      rows.push_back(kInfWidth);
      continue;
    }
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || value == kInfWidth)
      fail(Errc::ParseError, "bad row width token '" + tok + "'");
    rows.push_back(value);
  }
  return from_row_widths(std::move(rows));
}

nlohmann::json ZeroSet::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (Width w : rows_) {
    if (w == kInfWidth)
      rows.push_back("inf");
    else
      rows.push_back(w);
  }
  return nlohmann::json{{"rows", rows}};
}

ZeroSet ZeroSet::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    fail(Errc::ParseError, "expected {\"rows\": [...]}");
  std::vector<Width> rows;
  for (const auto& e : j["rows"]) {
    if (e.is_string()) {
      if (e.get<std::string>() != "inf") fail(Errc::ParseError, "bad row width string");
      rows.push_back(kInfWidth);
    } else if (e.is_number_integer() && e.get<int64_t>() >= 0) {
      uint64_t value = e.get<uint64_t>();
      if (value >= kInfWidth) fail(Errc::ParseError, "row width out of range");
      rows.push_back(static_cast<Width>(value));
    } else {
      fail(Errc::ParseError, "row widths must be nonnegative integers or \"inf\"");
    }
  }
  return from_row_widths(std::move(rows));
}

ZeroSet bootstrap_zero_set(uint32_t r) {
  if (r < 1) fail(Errc::BadConfig, "bootstrap threshold must be >= 1");
  std::vector<Width> rows(r);
  for (uint32_t v = 0; v < r; ++v) rows[v] = r - v;
  return ZeroSet::from_row_widths(std::move(rows));
}

ZeroSet line_zero_set(uint32_t r, uint32_t s) {
  if (r < 1 || s < 1) fail(Errc::BadConfig, "line thresholds must be >= 1");
  return ZeroSet::from_row_widths(std::vector<Width>(s, r));
}

ZeroSet perturbed_line_zero_set(uint32_t r, uint32_t s) {
  if (s < 2 || s > r) fail(Errc::BadConfig, "perturbed line requires 2 <= s <= r");
  std::vector<Width> rows(s, r);
  rows[s - 1] = r - 1;
  return ZeroSet::from_row_widths(std::move(rows));
}

ZeroSet l_finite_zero_set(uint32_t r, uint32_t s1, uint32_t s2) {
  if (s1 < 1 || s1 >= r || s2 < 1 || s2 >= r)
    fail(Errc::BadConfig, "L-shape requires 1 <= s1, s2 < r");
  std::vector<Width> rows(r, s1);
  for (uint32_t v = 0; v < s2; ++v) rows[v] = r;
  return ZeroSet::from_row_widths(std::move(rows));
}

ZeroSet l_infinite_zero_set(uint32_t r, uint32_t s1, uint32_t s2) {
  if (s2 < 1 || s2 >= r || s1 < 1)
    fail(Errc::BadConfig, "infinite L-shape requires 1 <= s2 < r and s1 >= 1");
  std::vector<Width> rows(r, s1);
  for (uint32_t v = 0; v < s2; ++v) rows[v] = kInfWidth;
  return ZeroSet::from_row_widths(std::move(rows));
}

Rule::Rule(const ZeroSet& zs, uint32_t rho, ValidateMode mode) : rho_(rho) {
  if (rho < 1) fail(Errc::BadConfig, "rho must be positive");
  if (mode == ValidateMode::Strict && zs.max_finite_width() > rho)
    fail(Errc::WidthExceedsRange, "finite width exceeds rho in strict mode");
  zs_ = zs.normalized(rho);
}

}  // namespace ydgrow
