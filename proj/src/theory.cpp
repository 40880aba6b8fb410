#include "ydgrow/theory.hpp"

#include <cmath>

namespace ydgrow {

std::string format_rational(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

const char* power_kind_name(PowerKind k) {
  switch (k) {
    case PowerKind::PureCritical: return "pure";
    case PowerKind::Critical: return "critical";
    case PowerKind::LowerBound: return "lower";
    case PowerKind::UpperBound: return "upper";
  }
  return "unknown";
}

uint32_t m_hat_bootstrap(uint32_t r) {
  if (r < 1) fail(Errc::BadConfig, "r must be >= 1");
  uint64_t m = 0;
  while ((m + 1) * (m + 1) + 3 * (m + 1) < 2 * uint64_t(r)) ++m;
  return uint32_t(m);
}

PowerResult gamma_bootstrap(uint32_t r) {
  long long m = m_hat_bootstrap(r);
  Rational value((m + 1) * (2 * (long long)r - m), 2 * (m + 2));
  return PowerResult{value, PowerKind::PureCritical, "bootstrap", ""};
}

PowerResult gamma_line(uint32_t r, uint32_t s) {
  if (r < 1 || s < 1 || s > r) fail(Errc::BadConfig, "line powers need 1 <= s <= r");
  if (s == 1)
    return PowerResult{Rational(r, r + 1), PowerKind::PureCritical, "line", ""};
  PowerResult res{Rational((long long)(r - 1) * s, r), PowerKind::Critical, "line", ""};
  if (r == 2 && s == 2)
    res.note = "not pure: the expected occupation time carries a logarithmic factor";
  else
    res.note = "purity unresolved";
  return res;
}

namespace {

// Largest m >= 0 with (2m+1)^2 <= 4r+9, i.e. floor((-1+sqrt(4r+9))/2).
uint32_t equal_arm_m(uint32_t r, uint32_t s) {
  uint64_t m = 0;
  while ((2 * (m + 1) + 1) * (2 * (m + 1) + 1) <= 4 * uint64_t(r) + 9) ++m;
  return uint32_t(std::min<uint64_t>(m, s / 2));
}

PowerSummary thin_arm_summary(uint32_t r, uint32_t s, const std::string& source) {
  PowerSummary out;
  if (2 * uint64_t(s) <= r) {
    out.exact = PowerResult{Rational(r, 2), PowerKind::PureCritical, source, ""};
  } else {
    out.lower = PowerResult{Rational((long long)s * (r - 1), r), PowerKind::LowerBound, source, ""};
    out.upper = PowerResult{Rational((long long)s * r - s + r, r + 1), PowerKind::UpperBound, source, ""};
  }
  return out;
}

}  // namespace

PowerSummary gamma_l_finite(uint32_t r, uint32_t s1, uint32_t s2) {
  if (s1 < 1 || s1 >= r || s2 < 1 || s2 >= r)
    fail(Errc::BadConfig, "L-shape powers need 1 <= s1, s2 < r");
  if (s1 == 1) return thin_arm_summary(r, s2, "l-finite thin-arm");
  if (s2 == 1) return thin_arm_summary(r, s1, "l-finite thin-arm (transposed)");
  if (s1 == 2 && s2 == 2 && r >= 6) {
    PowerSummary out;
    out.exact = PowerResult{Rational(2 * (long long)r, 3), PowerKind::PureCritical,
                            "l-finite double-arm", ""};
    return out;
  }
  if (s1 == s2) {
    uint32_t s = s1;
    long long m = equal_arm_m(r, s);
    PowerSummary out;
    out.lower = PowerResult{Rational(m * ((long long)r - m + 1), 1 + m), PowerKind::LowerBound,
                            "l-finite equal-arms", ""};
    out.upper = PowerResult{Rational((long long)r * s, s + 1), PowerKind::UpperBound,
                            "l-finite equal-arms", ""};
    return out;
  }
  fail(Errc::Unsupported, "no exact power or bound pair for this (r, s1, s2)");
}

PowerResult gamma_l_infinite(uint32_t r, uint32_t s1, uint32_t s2) {
  if (s2 < 1 || s2 >= r || s1 < 1)
    fail(Errc::BadConfig, "infinite L-shape powers need 1 <= s2 < r and s1 >= 1");
  Rational value((long long)r * s1 + s2, 1 + (long long)s1);
  return PowerResult{value, PowerKind::PureCritical, "l-infinite", ""};
}

const std::vector<CatalogEntry>& small_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    auto exact = [](std::vector<Width> rows, long long num, long long den, PowerKind kind,
                    const char* source, const char* note = "") {
      PowerSummary s;
      s.exact = PowerResult{Rational(num, den), kind, source, note};
      return CatalogEntry{ZeroSet::from_row_widths(std::move(rows)), std::move(s)};
    };
    auto bounds = [](std::vector<Width> rows, long long lnum, long long lden, long long unum,
                     long long uden, const char* source, const char* note) {
      PowerSummary s;
      s.lower = PowerResult{Rational(lnum, lden), PowerKind::LowerBound, source, note};
      s.upper = PowerResult{Rational(unum, uden), PowerKind::UpperBound, source, note};
      return CatalogEntry{ZeroSet::from_row_widths(std::move(rows)), std::move(s)};
    };
    std::vector<CatalogEntry> entries;
    entries.push_back(exact({1}, 1, 2, PowerKind::PureCritical, "line"));
    entries.push_back(exact({2}, 2, 3, PowerKind::PureCritical, "line"));
    entries.push_back(exact({3}, 3, 4, PowerKind::PureCritical, "line"));
    entries.push_back(exact({2, 1}, 1, 1, PowerKind::PureCritical, "bootstrap"));
    entries.push_back(exact({3, 1}, 1, 1, PowerKind::PureCritical, "height-2 hook",
                            "pure power 1 for every hook with minimal counts (0,2),(1,1),(r,0)"));
    entries.push_back(exact({2, 2}, 1, 1, PowerKind::Critical, "line",
                            "not pure: the expected occupation time carries a logarithmic factor"));
    entries.push_back(exact({3, 2}, 4, 3, PowerKind::Critical, "perturbed-line", "purity unresolved"));
    entries.push_back(exact({3, 3}, 4, 3, PowerKind::Critical, "line", "purity unresolved"));
    entries.push_back(exact({3, 1, 1}, 3, 2, PowerKind::PureCritical, "l-finite thin-arm"));
    entries.push_back(exact({3, 2, 1}, 5, 3, PowerKind::PureCritical, "bootstrap"));
    entries.push_back(exact({3, 2, 2}, 5, 3, PowerKind::PureCritical, "notched triangle",
                            "bottom-up growth matches the bootstrap triangle rate"));
    entries.push_back(exact({3, 3, 2}, 2, 1, PowerKind::Critical, "perturbed-line", "purity unresolved"));
    entries.push_back(exact({3, 3, 3}, 2, 1, PowerKind::Critical, "line",
                            "purity unresolved, suspected impure"));
    entries.push_back(bounds({4, 2, 2}, 5, 3, 2, 1, "unresolved", "critical power unknown"));
    entries.push_back(bounds({4, 3, 3}, 2, 1, 9, 4, "unresolved", "critical power unknown"));
    return entries;
  }();
  return catalog;
}

FitResult power_fit(const std::vector<double>& p, const std::vector<double>& median_T) {
  if (p.size() != median_T.size()) fail(Errc::BadConfig, "p and median_T sizes differ");
  size_t n = p.size();
  if (n < 3) fail(Errc::DegenerateFit, "need at least 3 points");
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(p[i] > 0.0 && p[i] < 1.0)) fail(Errc::BadConfig, "p values must lie in (0, 1)");
    if (!(median_T[i] > 0.0)) fail(Errc::BadConfig, "median times must be positive");
    x[i] = -std::log(p[i]);
    y[i] = std::log(median_T[i]);
  }
  double xbar = 0, ybar = 0;
  for (size_t i = 0; i < n; ++i) {
    xbar += x[i];
    ybar += y[i];
  }
  xbar /= double(n);
  ybar /= double(n);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  if (sxx <= 0.0) fail(Errc::DegenerateFit, "p values do not vary");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ssr = 0;
  for (size_t i = 0; i < n; ++i) {
    double resid = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += resid * resid;
  }
  fit.slope_stderr = n > 2 ? std::sqrt(ssr / double(n - 2) / sxx) : 0.0;
  return fit;
}

}  // namespace ydgrow
