#pragma once

// Synchronous growth dynamics. An unoccupied site becomes occupied exactly
// when its pair of cross counts falls outside the rule's zero set; occupied
// sites never change. Engine keeps incremental per-row/per-column window
// counts; step_naive recomputes every window directly and serves as the
// independent oracle the optimized path is equivalence-tested against.

#include <cstdint>
#include <utility>
#include <vector>

#include "ydgrow/grid.hpp"
#include "ydgrow/zeroset.hpp"

namespace ydgrow {

enum class StopReason { Fixed, OriginOccupied, TimeLimit };

const char* stop_reason_name(StopReason r);

struct Outcome {
  StopReason stop_reason = StopReason::Fixed;
  // Fixed: the step that completed the box, or the first step that changed
  // nothing. OriginOccupied: the target's birth time. TimeLimit: t_max.
  int64_t stop_time = 0;
  uint64_t newly_occupied_total = 0;
  double final_density = 0.0;
};

struct StopCondition {
  enum class Mode { UntilFixed, UntilOrigin };
  Mode mode = Mode::UntilFixed;
  int64_t origin_x = 0, origin_y = 0;
  static constexpr int64_t kNoLimit = INT64_MAX;
  int64_t t_max = kNoLimit;

  static StopCondition until_fixed(int64_t t_max = kNoLimit) {
    StopCondition s;
    s.t_max = t_max;
    return s;
  }
  static StopCondition until_origin(int64_t x, int64_t y, int64_t t_max = kNoLimit) {
    StopCondition s;
    s.mode = Mode::UntilOrigin;
    s.origin_x = x;
    s.origin_y = y;
    s.t_max = t_max;
    return s;
  }
};

class Engine {
 public:
  // Mutates cfg in place. Steps are numbered from the largest birth time
  // already present (0 on a fresh configuration).
  Engine(Configuration& cfg, const Rule& rule);

  // One synchronous update; returns the number of cells added.
  uint64_t step();

  Outcome run(const StopCondition& stop);

  int64_t time() const { return t_; }
  const Configuration& config() const { return cfg_; }

 private:
  void apply_plane_add(uint32_t x, uint32_t y);
  void add_row_range(uint16_t* base, int64_t lo, int64_t hi, uint32_t limit);
  void enqueue_cross(uint32_t x, uint32_t y);
  void sweep_collect();
  uint64_t finish_step();

  Configuration& cfg_;
  Rule rule_;
  uint32_t w_, h_, rho_;
  bool periodic_;
  std::vector<uint16_t> hcnt_;   // row-major, w*h
  std::vector<uint16_t> vcnt_;   // column-major, h*w (index x*h + y)
  std::vector<uint16_t> cap_;    // fire iff h_count >= cap_[v_count], v_count <= 2*rho+1
  std::vector<std::pair<uint32_t, uint32_t>> frontier_;  // candidates for the next step
  std::vector<std::pair<uint32_t, uint32_t>> newly_;
  std::vector<uint64_t> vrow_bits_;  // scratch for the initial sweep
  int64_t t_ = 0;
  bool swept_ = false;
};

// One-shot synchronous step on cfg (builds a fresh engine).
uint64_t step(Configuration& cfg, const Rule& rule);

// Reference step: direct window scans, no incremental state.
uint64_t step_naive(Configuration& cfg, const Rule& rule);

Outcome run(Configuration& cfg, const Rule& rule, const StopCondition& stop);

// True iff one further step would change nothing. Non-mutating direct scan.
bool is_inert(const Configuration& cfg, const Rule& rule);

// Coarse comparison dynamics for line rules (all rows the same finite width):
// a horizontal line containing >= width occupied sites inside some interval
// of `window` consecutive sites becomes fully occupied, a vertical line with
// >= height occupied sites in such an interval likewise; both synchronously.
// Errors: NotRectangular unless the zero set is a finite rectangle.
uint64_t saturated_line_step(Configuration& cfg, const Rule& rule, uint32_t window);

enum class Orientation { Horizontal, Vertical };

// Deterministic seed patterns on n-by-n zero-boundary boxes, birth time 0.
Configuration packed_strip(const Rule& rule, uint32_t n);
Configuration filled_adjacent_lines(uint32_t k, Orientation orientation, uint32_t n);
Configuration diagonal_nucleus(uint32_t r, uint32_t n);
inline Configuration diagonal_nucleus(uint32_t r) { return diagonal_nucleus(r, r); }
Configuration parallel_lines(uint32_t k, uint32_t spacing, Orientation orientation, uint32_t n);

}  // namespace ydgrow
