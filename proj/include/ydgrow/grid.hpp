#pragma once

// Bit-packed lattice configurations. Coordinates are (column x, row y) with
// the origin at the lower left; renderers flip vertically on output.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ydgrow/rng.hpp"
#include "ydgrow/zeroset.hpp"

namespace ydgrow {

enum class Boundary { Zero, Periodic };

const char* boundary_name(Boundary b);
Boundary parse_boundary(std::string_view s);

class Configuration {
 public:
  // Periodic boxes must be square.
  Configuration(uint32_t width, uint32_t height, Boundary boundary);

  uint32_t width() const { return w_; }
  uint32_t height() const { return h_; }
  Boundary boundary() const { return boundary_; }
  uint64_t cell_count() const { return uint64_t(w_) * h_; }

  // Wraps under Periodic; outside the box under Zero reads as unoccupied.
  bool get(int64_t x, int64_t y) const;

  // Marks (x, y) occupied with the given birth time; no-op if already
  // occupied (occupied cells never change). Returns true if newly set.
  bool occupy(uint32_t x, uint32_t y, int32_t birth_time);
  void set(uint32_t x, uint32_t y) { occupy(x, y, 0); }

  static constexpr int32_t kNever = INT32_MAX;
  int32_t birth_time(uint32_t x, uint32_t y) const { return birth_[idx(x, y)]; }

  uint64_t count_occupied() const { return occupied_; }
  bool full() const { return occupied_ == cell_count(); }
  double density() const { return cell_count() ? double(occupied_) / double(cell_count()) : 0.0; }
  int32_t max_birth_time() const;

  uint32_t words_per_row() const { return wpr_; }
  const uint64_t* row_bits(uint32_t y) const { return bits_.data() + size_t(y) * wpr_; }

  // Occupied cells in row y with lo <= x <= hi; 0 <= lo <= hi < width.
  uint32_t count_row_range(uint32_t y, uint32_t lo, uint32_t hi) const;

  // "W H zero|periodic" then height rows of '.'/'#', top row (y = h-1) first.
  // Captures occupancy only; loaded cells get birth time 0.
  std::string dump() const;
  static Configuration load(std::string_view text);

  bool same_cells(const Configuration& other) const;
  bool same_birth_times(const Configuration& other) const;

 private:
  size_t idx(uint32_t x, uint32_t y) const { return size_t(y) * w_ + x; }

  uint32_t w_, h_, wpr_;
  Boundary boundary_;
  std::vector<uint64_t> bits_;
  std::vector<int32_t> birth_;
  uint64_t occupied_ = 0;
};

struct CrossCounts {
  uint32_t h_count = 0;
  uint32_t v_count = 0;
  friend bool operator==(const CrossCounts&, const CrossCounts&) = default;
};

// Occupied cells on the horizontal/vertical arms [-rho, rho] through (x, y),
// center included. Errors: TorusTooSmall when periodic and n < 2*rho+1.
CrossCounts cross_counts(const Configuration& cfg, const Rule& rule, int64_t x, int64_t y);

// Independent Bernoulli(p) fill, one draw per cell in row-major order
// (row 0 first, x ascending); occupied cells get birth time 0.
Configuration random_configuration(uint32_t width, uint32_t height, Boundary boundary, double p,
                                   SplitMix64& rng);

}  // namespace ydgrow
