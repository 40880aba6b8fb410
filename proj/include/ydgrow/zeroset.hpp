#pragma once

// Young-diagram zero sets and update rules.
//
// A zero set is a finite-height downward-closed subset of Z+^2, stored as
// nonincreasing row widths, bottom row first. A width may be the infinite
// sentinel kInfWidth (whole row in the set); finite heights only.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ydgrow/error.hpp"

#include "json.hpp"

namespace ydgrow {

using Width = uint32_t;
inline constexpr Width kInfWidth = UINT32_MAX;  // ordered above every finite width; no arithmetic

struct MinimalCount {
  uint32_t u = 0;  // horizontal count
  uint32_t v = 0;  // vertical count
  friend bool operator==(const MinimalCount&, const MinimalCount&) = default;
  friend auto operator<=>(const MinimalCount&, const MinimalCount&) = default;
};

class ZeroSet {
 public:
  ZeroSet() = default;  // empty zero set (height 0): every pair of counts fires

  // Validates monotonicity; zero widths are dropped (they must be a suffix).
  static ZeroSet from_row_widths(std::vector<Width> rows);

  // Realizes the unique zero set whose minimal counts equal `counts`.
  // Rows below the smallest-v count get infinite width; a count with u=0 is
  // required (it fixes the height). Errors with Inconsistent otherwise.
  static ZeroSet from_minimal_counts(std::vector<MinimalCount> counts);

  uint32_t height() const { return static_cast<uint32_t>(rows_.size()); }
  Width row_width(uint32_t v) const { return rows_[v]; }
  const std::vector<Width>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  bool has_infinite_row() const { return !rows_.empty() && rows_[0] == kInfWidth; }
  Width max_finite_width() const;  // 0 if no finite row

  // (u, v) in the set <=> v < height and u < row_width(v).
  bool contains(uint32_t u, uint32_t v) const {
    return v < rows_.size() && (rows_[v] == kInfWidth || u < rows_[v]);
  }

  // Corner pairs just outside the set; sorted by v ascending (u descending).
  // The empty zero set yields {(0,0)}.
  std::vector<MinimalCount> minimal_counts() const;

  // Finite widths exceeding rho become infinite. Errors: HeightExceedsRange.
  ZeroSet normalized(uint32_t rho) const;

  // Conjugate diagram. Errors: InfiniteWidth if any row is infinite.
  ZeroSet transposed() const;

  // "3 2 1" / "inf 2 2"; empty string for the empty zero set.
  std::string to_text() const;
  static ZeroSet parse(std::string_view text);

  // {"rows": [3, 2, 1]} with "inf" for infinite widths.
  nlohmann::json to_json() const;
  static ZeroSet from_json(const nlohmann::json& j);

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;

 private:
  std::vector<Width> rows_;
};

// Named constructors.
ZeroSet bootstrap_zero_set(uint32_t r);                                 // [r, r-1, ..., 1]
ZeroSet line_zero_set(uint32_t r, uint32_t s);                          // s rows of width r
ZeroSet perturbed_line_zero_set(uint32_t r, uint32_t s);                // line minus its top-right cell
ZeroSet l_finite_zero_set(uint32_t r, uint32_t s1, uint32_t s2);        // [r]*s2 + [s1]*(r-s2)
ZeroSet l_infinite_zero_set(uint32_t r, uint32_t s1, uint32_t s2);      // [inf]*s2 + [s1]*(r-s2)

enum class ValidateMode { Normalize, Strict };

// A rule is a zero set paired with a neighborhood range rho >= height; after
// normalization every finite width is <= rho.
class Rule {
 public:
  Rule(const ZeroSet& zs, uint32_t rho, ValidateMode mode = ValidateMode::Normalize);

  const ZeroSet& zero_set() const { return zs_; }
  uint32_t rho() const { return rho_; }

  // An unoccupied site with these counts becomes occupied.
  bool occupies(uint32_t h_count, uint32_t v_count) const { return !zs_.contains(h_count, v_count); }

 private:
  ZeroSet zs_;
  uint32_t rho_;
};

inline Rule validate_rule(const ZeroSet& zs, uint32_t rho, ValidateMode mode = ValidateMode::Normalize) {
  return Rule(zs, rho, mode);
}

}  // namespace ydgrow
