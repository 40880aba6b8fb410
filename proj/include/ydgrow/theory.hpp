#pragma once

// Exact critical powers and bounds for the parametric zero-set families, a
// catalog of every zero set fitting small corners, and log-log power fits
// for measured occupation times. All powers are exact rationals; only the
// fitting routine touches floating point.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ydgrow/error.hpp"
#include "ydgrow/zeroset.hpp"

namespace ydgrow {

using Rational = boost::rational<long long>;

std::string format_rational(const Rational& q);  // "5/3", "15"

enum class PowerKind { PureCritical, Critical, LowerBound, UpperBound };

const char* power_kind_name(PowerKind k);

struct PowerResult {
  Rational value;
  PowerKind kind = PowerKind::Critical;
  std::string source;  // construction that produced the value
  std::string note;    // purity caveats, logarithmic corrections
};

// Exactly one of: `exact` set, or both `lower` and `upper` set.
struct PowerSummary {
  std::optional<PowerResult> exact;
  std::optional<PowerResult> lower;
  std::optional<PowerResult> upper;
  bool is_exact() const { return exact.has_value(); }
};

// Largest m >= 0 with m^2 + 3m < 2r; equals ceil((sqrt(9+8r) - 5) / 2).
uint32_t m_hat_bootstrap(uint32_t r);

// Pure critical power (m̂+1)(2r-m̂) / (2(m̂+2)) of the bootstrap triangle.
PowerResult gamma_bootstrap(uint32_t r);

// Line rules: s = 1 gives the pure power r/(r+1); 2 <= s <= r gives the
// critical power (r-1)s/r (not pure at r = s = 2, unresolved otherwise).
PowerResult gamma_line(uint32_t r, uint32_t s);

// Finite L-shaped corners [r]*s2 + [s1]*(r-s2), 1 <= s1, s2 < r.
// Dispatches the exact cases first, then the bound pairs; combinations not
// covered raise Unsupported.
PowerSummary gamma_l_finite(uint32_t r, uint32_t s1, uint32_t s2);

// Infinite L-shapes [inf]*s2 + [s1]*(r-s2): pure power (r*s1+s2)/(1+s1).
PowerResult gamma_l_infinite(uint32_t r, uint32_t s1, uint32_t s2);

struct CatalogEntry {
  ZeroSet zero_set;
  PowerSummary powers;
};

// Every zero set fitting a 3x3 corner (13 entries) plus the two width-4
// diagrams known only up to bound pairs.
const std::vector<CatalogEntry>& small_catalog();

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

// OLS fit of log(median_T) against log(1/p); at least 3 points.
// Errors: DegenerateFit when the p values do not vary.
FitResult power_fit(const std::vector<double>& p, const std::vector<double>& median_T);

}  // namespace ydgrow
