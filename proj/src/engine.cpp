#include "ydgrow/engine.hpp"

#include <algorithm>
#include <functional>

#include "ydgrow/kernels.hpp"

namespace ydgrow {

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Fixed: return "fixed";
    case StopReason::OriginOccupied: return "origin-occupied";
    case StopReason::TimeLimit: return "time-limit";
  }
  return "unknown";
}

Engine::Engine(Configuration& cfg, const Rule& rule)
    : cfg_(cfg),
      rule_(rule),
      w_(cfg.width()),
      h_(cfg.height()),
      rho_(rule.rho()),
      periodic_(cfg.boundary() == Boundary::Periodic) {
  if (periodic_ && w_ < 2 * uint64_t(rho_) + 1)
    fail(Errc::TorusTooSmall, "torus side below 2*rho+1");

  const ZeroSet& zs = rule_.zero_set();
  uint32_t vmax = 2 * rho_ + 1;
  cap_.resize(vmax + 1);
  for (uint32_t v = 0; v <= vmax; ++v) {
    if (v >= zs.height()) {
      cap_[v] = 0;  // v_count alone fires regardless of h_count
    } else {
      Width width = zs.row_width(v);
      cap_[v] = (width == kInfWidth) ? uint16_t(0xFFFF) : uint16_t(width);
    }
  }

  hcnt_.assign(size_t(w_) * h_, 0);
  vcnt_.assign(size_t(w_) * h_, 0);
  vrow_bits_.assign(cfg.words_per_row(), 0);
  for (uint32_t y = 0; y < h_; ++y)
    for (uint32_t x = 0; x < w_; ++x)
      if (cfg_.get(x, y)) apply_plane_add(x, y);
  t_ = cfg_.max_birth_time();
}

void Engine::add_row_range(uint16_t* base, int64_t lo, int64_t hi, uint32_t limit) {
  const auto& K = kernels::active_ops();
  if (periodic_) {
    // Window length 2*rho+1 <= limit, so a wrapped range never overlaps itself.
    int64_t n = limit, len = hi - lo + 1;
    lo %= n;
    if (lo < 0) lo += n;
    if (lo + len <= n) {
      K.range_add_u16(base + lo, size_t(len), 1);
    } else {
      K.range_add_u16(base + lo, size_t(n - lo), 1);
      K.range_add_u16(base, size_t(len - (n - lo)), 1);
    }
  } else {
    if (lo < 0) lo = 0;
    if (hi > int64_t(limit) - 1) hi = int64_t(limit) - 1;
    if (lo <= hi) K.range_add_u16(base + lo, size_t(hi - lo + 1), 1);
  }
}

void Engine::apply_plane_add(uint32_t x, uint32_t y) {
  int64_t r = rho_;
  add_row_range(hcnt_.data() + size_t(y) * w_, int64_t(x) - r, int64_t(x) + r, w_);
  add_row_range(vcnt_.data() + size_t(x) * h_, int64_t(y) - r, int64_t(y) + r, h_);
}

void Engine::enqueue_cross(uint32_t x, uint32_t y) {
  int64_t r = rho_;
  if (periodic_) {
    int64_t n = w_;
    for (int64_t d = -r; d <= r; ++d) {
      int64_t cx = (int64_t(x) + d) % n;
      if (cx < 0) cx += n;
      frontier_.push_back({uint32_t(cx), y});
      if (d != 0) {
        int64_t cy = (int64_t(y) + d) % n;
        if (cy < 0) cy += n;
        frontier_.push_back({x, uint32_t(cy)});
      }
    }
  } else {
    int64_t xlo = std::max<int64_t>(0, int64_t(x) - r);
    int64_t xhi = std::min<int64_t>(int64_t(w_) - 1, int64_t(x) + r);
    for (int64_t cx = xlo; cx <= xhi; ++cx) frontier_.push_back({uint32_t(cx), y});
    int64_t ylo = std::max<int64_t>(0, int64_t(y) - r);
    int64_t yhi = std::min<int64_t>(int64_t(h_) - 1, int64_t(y) + r);
    for (int64_t cy = ylo; cy <= yhi; ++cy)
      if (cy != int64_t(y)) frontier_.push_back({x, uint32_t(cy)});
  }
}

void Engine::sweep_collect() {
  const auto& K = kernels::active_ops();
  std::vector<uint16_t> vrow(w_, 0);
  auto add_bit_row = [&](int64_t y) { K.bits_add_u16(vrow.data(), cfg_.row_bits(uint32_t(y)), w_); };
  auto sub_bit_row = [&](int64_t y) { K.bits_sub_u16(vrow.data(), cfg_.row_bits(uint32_t(y)), w_); };
  int64_t r = rho_, n = h_;

  if (periodic_) {
    for (int64_t d = -r; d <= r; ++d) add_bit_row(((d % n) + n) % n);
  } else {
    for (int64_t d = 0; d <= std::min<int64_t>(r, n - 1); ++d) add_bit_row(d);
  }
  for (int64_t y = 0; y < n; ++y) {
    if (y > 0) {
      if (periodic_) {
        add_bit_row((y + r) % n);
        sub_bit_row(((y - 1 - r) % n + n) % n);
      } else {
        if (y + r < n) add_bit_row(y + r);
        if (y - 1 - r >= 0) sub_bit_row(y - 1 - r);
      }
    }
    K.classify_u16(hcnt_.data() + size_t(y) * w_, vrow.data(), cfg_.row_bits(uint32_t(y)), w_,
                   cap_.data(), cap_.size(), vrow_bits_.data());
    for (uint32_t word = 0; word < cfg_.words_per_row(); ++word) {
      uint64_t bits = vrow_bits_[word];
      while (bits) {
        uint32_t x = word * 64 + uint32_t(__builtin_ctzll(bits));
        bits &= bits - 1;
        newly_.push_back({x, uint32_t(y)});
      }
    }
  }
}

uint64_t Engine::step() {
  int64_t t_next = t_ + 1;
  newly_.clear();
  if (!swept_) {
    sweep_collect();
    swept_ = true;
    for (auto [x, y] : newly_) cfg_.occupy(x, y, int32_t(t_next));
  } else {
    // Candidate counts live in the planes, which still describe the pre-step
    // configuration; setting bits during collection only deduplicates.
    size_t count = frontier_.size();
    for (size_t i = 0; i < count; ++i) {
      auto [x, y] = frontier_[i];
      if (cfg_.get(x, y)) continue;
      uint16_t hc = hcnt_[size_t(y) * w_ + x];
      uint16_t vc = vcnt_[size_t(x) * h_ + y];
      if (hc >= cap_[vc]) {
        cfg_.occupy(x, y, int32_t(t_next));
        newly_.push_back({x, y});
      }
    }
    frontier_.clear();
  }
  for (auto [x, y] : newly_) {
    apply_plane_add(x, y);
    enqueue_cross(x, y);
  }
  t_ = t_next;
  return newly_.size();
}

Outcome Engine::run(const StopCondition& stop) {
  Outcome out;
  int64_t t0 = t_;
  auto wrap = [&](int64_t c, uint32_t limit) {
    c %= int64_t(limit);
    if (c < 0) c += limit;
    return c;
  };
  auto origin_in_box = [&]() {
    if (periodic_) return true;
    return stop.origin_x >= 0 && stop.origin_x < int64_t(w_) && stop.origin_y >= 0 &&
           stop.origin_y < int64_t(h_);
  };
  auto origin_occupied = [&]() { return cfg_.get(stop.origin_x, stop.origin_y); };
  auto origin_birth = [&]() {
    return cfg_.birth_time(uint32_t(wrap(stop.origin_x, w_)), uint32_t(wrap(stop.origin_y, h_)));
  };
  if (stop.mode == StopCondition::Mode::UntilOrigin) {
    if (!origin_in_box()) fail(Errc::BadConfig, "origin outside the box");
    if (origin_occupied()) {
      out.stop_reason = StopReason::OriginOccupied;
      out.stop_time = origin_birth();
      out.final_density = cfg_.density();
      return out;
    }
  }
  if (cfg_.full()) {
    out.stop_reason = StopReason::Fixed;
    out.stop_time = t_;
    out.final_density = 1.0;
    return out;
  }
  for (;;) {
    if (stop.t_max != StopCondition::kNoLimit && t_ - t0 >= stop.t_max) {
      out.stop_reason = StopReason::TimeLimit;
      out.stop_time = t_;
      break;
    }
    uint64_t changed = step();
    out.newly_occupied_total += changed;
    if (stop.mode == StopCondition::Mode::UntilOrigin && origin_occupied()) {
      out.stop_reason = StopReason::OriginOccupied;
      out.stop_time = t_;
      break;
    }
    if (changed == 0 || cfg_.full()) {
      out.stop_reason = StopReason::Fixed;
      out.stop_time = t_;
      break;
    }
  }
  out.final_density = cfg_.density();
  return out;
}

uint64_t step(Configuration& cfg, const Rule& rule) { return Engine(cfg, rule).step(); }

Outcome run(Configuration& cfg, const Rule& rule, const StopCondition& stop) {
  return Engine(cfg, rule).run(stop);
}

uint64_t step_naive(Configuration& cfg, const Rule& rule) {
  int64_t rho = rule.rho();
  if (cfg.boundary() == Boundary::Periodic && cfg.width() < 2 * uint64_t(rho) + 1)
    fail(Errc::TorusTooSmall, "torus side below 2*rho+1");
  const ZeroSet& zs = rule.zero_set();
  int32_t t_next = cfg.max_birth_time() + 1;
  std::vector<std::pair<uint32_t, uint32_t>> newly;
  for (uint32_t y = 0; y < cfg.height(); ++y)
    for (uint32_t x = 0; x < cfg.width(); ++x) {
      if (cfg.get(x, y)) continue;
      uint32_t hc = 0, vc = 0;
      for (int64_t d = -rho; d <= rho; ++d) {
        hc += cfg.get(int64_t(x) + d, y) ? 1u : 0u;
        vc += cfg.get(x, int64_t(y) + d) ? 1u : 0u;
      }
      if (!zs.contains(hc, vc)) newly.push_back({x, y});
    }
  for (auto [x, y] : newly) cfg.occupy(x, y, t_next);
  return newly.size();
}

bool is_inert(const Configuration& cfg, const Rule& rule) {
  int64_t rho = rule.rho();
  if (cfg.boundary() == Boundary::Periodic && cfg.width() < 2 * uint64_t(rho) + 1)
    fail(Errc::TorusTooSmall, "torus side below 2*rho+1");
  const ZeroSet& zs = rule.zero_set();
  for (uint32_t y = 0; y < cfg.height(); ++y)
    for (uint32_t x = 0; x < cfg.width(); ++x) {
      if (cfg.get(x, y)) continue;
      uint32_t hc = 0, vc = 0;
      for (int64_t d = -rho; d <= rho; ++d) {
        hc += cfg.get(int64_t(x) + d, y) ? 1u : 0u;
        vc += cfg.get(x, int64_t(y) + d) ? 1u : 0u;
      }
      if (!zs.contains(hc, vc)) return false;
    }
  return true;
}

namespace {

// Largest occupied-count over intervals of `window` consecutive sites along a
// length-`limit` line; zero boundary clamps, periodic wraps (window <= limit).
uint32_t max_window_count(const std::function<bool(int64_t)>& at, int64_t limit, int64_t window,
                          bool periodic) {
  if (!periodic && window >= limit) {
    uint32_t c = 0;
    for (int64_t i = 0; i < limit; ++i) c += at(i) ? 1u : 0u;
    return c;
  }
  uint32_t best = 0, cur = 0;
  if (periodic) {
    auto wrapped = [&](int64_t i) { return at(((i % limit) + limit) % limit); };
    for (int64_t i = 0; i < window; ++i) cur += wrapped(i) ? 1u : 0u;
    best = cur;
    for (int64_t start = 1; start < limit; ++start) {
      cur += (wrapped(start + window - 1) ? 1u : 0u) - (wrapped(start - 1) ? 1u : 0u);
      best = std::max(best, cur);
    }
  } else {
    for (int64_t i = 0; i < window; ++i) cur += at(i) ? 1u : 0u;
    best = cur;
    for (int64_t start = 1; start + window <= limit; ++start) {
      cur += (at(start + window - 1) ? 1u : 0u) - (at(start - 1) ? 1u : 0u);
      best = std::max(best, cur);
    }
  }
  return best;
}

}  // namespace

uint64_t saturated_line_step(Configuration& cfg, const Rule& rule, uint32_t window) {
  const ZeroSet& zs = rule.zero_set();
  if (zs.empty() || zs.has_infinite_row())
    fail(Errc::NotRectangular, "saturated-line dynamics needs a finite rectangular zero set");
  Width r = zs.row_width(0);
  for (uint32_t v = 0; v < zs.height(); ++v)
    if (zs.row_width(v) != r)
      fail(Errc::NotRectangular, "saturated-line dynamics needs a rectangular zero set");
  uint32_t s = zs.height();
  if (window < 2) fail(Errc::BadConfig, "window must be >= 2");

  bool periodic = cfg.boundary() == Boundary::Periodic;
  int64_t w = cfg.width(), h = cfg.height();
  int64_t win_h = std::min<int64_t>(window, w), win_v = std::min<int64_t>(window, h);

  std::vector<uint32_t> fill_rows, fill_cols;
  for (int64_t y = 0; y < h; ++y) {
    auto at = [&](int64_t x) { return cfg.get(x, y); };
    if (max_window_count(at, w, win_h, periodic) >= r) fill_rows.push_back(uint32_t(y));
  }
  for (int64_t x = 0; x < w; ++x) {
    auto at = [&](int64_t y) { return cfg.get(x, y); };
    if (max_window_count(at, h, win_v, periodic) >= s) fill_cols.push_back(uint32_t(x));
  }

  int32_t t_next = cfg.max_birth_time() + 1;
  uint64_t added = 0;
  for (uint32_t y : fill_rows)
    for (uint32_t x = 0; x < cfg.width(); ++x) added += cfg.occupy(x, y, t_next) ? 1u : 0u;
  for (uint32_t x : fill_cols)
    for (uint32_t y = 0; y < cfg.height(); ++y) added += cfg.occupy(x, y, t_next) ? 1u : 0u;
  return added;
}

Configuration packed_strip(const Rule& rule, uint32_t n) {
  const ZeroSet& zs = rule.zero_set();
  if (zs.empty() || zs.row_width(0) == kInfWidth)
    fail(Errc::BadConfig, "packed strip needs a finite leading row width");
  uint32_t r = zs.row_width(0);
  if (r > n) fail(Errc::PatternTooLarge, "packed strip does not fit the box");
  Configuration cfg(n, n, Boundary::Zero);
  for (uint32_t j = 0; j < r; ++j)
    for (uint32_t x = 0; x < r - j; ++x) cfg.set(x, j);
  return cfg;
}

Configuration filled_adjacent_lines(uint32_t k, Orientation orientation, uint32_t n) {
  if (k < 1) fail(Errc::BadConfig, "need at least one line");
  if (k > n) fail(Errc::PatternTooLarge, "lines do not fit the box");
  Configuration cfg(n, n, Boundary::Zero);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      if (orientation == Orientation::Horizontal)
        cfg.set(j, i);
      else
        cfg.set(i, j);
    }
  return cfg;
}

Configuration diagonal_nucleus(uint32_t r, uint32_t n) {
  if (r < 1) fail(Errc::BadConfig, "need at least one cell");
  if (r > n) fail(Errc::PatternTooLarge, "diagonal does not fit the box");
  Configuration cfg(n, n, Boundary::Zero);
  for (uint32_t i = 0; i < r; ++i) cfg.set(i, i);
  return cfg;
}

Configuration parallel_lines(uint32_t k, uint32_t spacing, Orientation orientation, uint32_t n) {
  if (k < 1 || spacing < 1) fail(Errc::BadConfig, "need k >= 1 lines with spacing >= 1");
  if (uint64_t(k - 1) * spacing >= n) fail(Errc::PatternTooLarge, "lines do not fit the box");
  Configuration cfg(n, n, Boundary::Zero);
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      uint32_t line = i * spacing;
      if (orientation == Orientation::Horizontal)
        cfg.set(j, line);
      else
        cfg.set(line, j);
    }
  return cfg;
}

}  // namespace ydgrow
