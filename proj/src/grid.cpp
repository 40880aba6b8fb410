#include "ydgrow/grid.hpp"

#include <bit>
#include <sstream>

namespace ydgrow {

const char* boundary_name(Boundary b) { return b == Boundary::Zero ? "zero" : "periodic"; }

Boundary parse_boundary(std::string_view s) {
  if (s == "zero") return Boundary::Zero;
  if (s == "periodic") return Boundary::Periodic;
  fail(Errc::ParseError, "boundary must be 'zero' or 'periodic'");
}

Configuration::Configuration(uint32_t width, uint32_t height, Boundary boundary)
    : w_(width), h_(height), wpr_((width + 63) / 64), boundary_(boundary) {
  if (width == 0 || height == 0) fail(Errc::BadConfig, "box dimensions must be positive");
  if (boundary == Boundary::Periodic && width != height)
    fail(Errc::BadConfig, "periodic boxes must be square");
  bits_.assign(size_t(wpr_) * h_, 0);
  birth_.assign(size_t(w_) * h_, kNever);
}

bool Configuration::get(int64_t x, int64_t y) const {
  if (boundary_ == Boundary::Periodic) {
    x %= w_;
    if (x < 0) x += w_;
    y %= h_;
    if (y < 0) y += h_;
  } else if (x < 0 || y < 0 || x >= w_ || y >= h_) {
    return false;
  }
  return (bits_[size_t(y) * wpr_ + (uint64_t(x) >> 6)] >> (x & 63)) & 1u;
}

bool Configuration::occupy(uint32_t x, uint32_t y, int32_t birth_time) {
  uint64_t& word = bits_[size_t(y) * wpr_ + (x >> 6)];
  uint64_t mask = 1ull << (x & 63);
  if (word & mask) return false;
  word |= mask;
  birth_[idx(x, y)] = birth_time;
  ++occupied_;
  return true;
}

int32_t Configuration::max_birth_time() const {
  int32_t t = 0;
  for (uint32_t y = 0; y < h_; ++y)
    for (uint32_t x = 0; x < w_; ++x) {
      int32_t b = birth_[idx(x, y)];
      if (b != kNever && b > t) t = b;
    }
  return t;
}

uint32_t Configuration::count_row_range(uint32_t y, uint32_t lo, uint32_t hi) const {
  const uint64_t* row = row_bits(y);
  uint32_t wlo = lo >> 6, whi = hi >> 6;
  uint64_t mlo = ~0ull << (lo & 63);
  uint64_t mhi = ~0ull >> (63 - (hi & 63));
  if (wlo == whi) return std::popcount(row[wlo] & mlo & mhi);
  uint32_t count = std::popcount(row[wlo] & mlo) + std::popcount(row[whi] & mhi);
  for (uint32_t w = wlo + 1; w < whi; ++w) count += std::popcount(row[w]);
  return count;
}

std::string Configuration::dump() const {
  std::string out = std::to_string(w_) + " " + std::to_string(h_) + " " + boundary_name(boundary_) + "\n";
  for (uint32_t yy = 0; yy < h_; ++yy) {
    uint32_t y = h_ - 1 - yy;
    for (uint32_t x = 0; x < w_; ++x) out += get(x, y) ? '#' : '.';
    out += '\n';
  }
  return out;
}

Configuration Configuration::load(std::string_view text) {
  std::istringstream in{std::string(text)};
  uint32_t w = 0, h = 0;
  std::string btok;
  if (!(in >> w >> h >> btok)) fail(Errc::ParseError, "bad configuration header");
  Configuration cfg(w, h, parse_boundary(btok));
  std::string line;
  std::getline(in, line);  // rest of header line
  for (uint32_t yy = 0; yy < h; ++yy) {
    if (!std::getline(in, line) || line.size() != w)
      fail(Errc::ParseError, "configuration row " + std::to_string(yy) + " malformed");
    uint32_t y = h - 1 - yy;
    for (uint32_t x = 0; x < w; ++x) {
      if (line[x] == '#')
        cfg.set(x, y);
      else if (line[x] != '.')
        fail(Errc::ParseError, "unexpected cell character");
    }
  }
  return cfg;
}

bool Configuration::same_cells(const Configuration& other) const {
  return w_ == other.w_ && h_ == other.h_ && boundary_ == other.boundary_ && bits_ == other.bits_;
}

bool Configuration::same_birth_times(const Configuration& other) const {
  return same_cells(other) && birth_ == other.birth_;
}

CrossCounts cross_counts(const Configuration& cfg, const Rule& rule, int64_t x, int64_t y) {
  int64_t rho = rule.rho();
  CrossCounts counts;
  if (cfg.boundary() == Boundary::Periodic) {
    int64_t n = cfg.width();
    if (n < 2 * rho + 1) fail(Errc::TorusTooSmall, "torus side below 2*rho+1");
    x %= n;
    if (x < 0) x += n;
    y %= n;
    if (y < 0) y += n;
    // The window is shorter than the torus, so a wrapped range never overlaps itself.
    int64_t lo = x - rho, hi = x + rho;
    if (lo < 0) {
      counts.h_count = cfg.count_row_range(uint32_t(y), uint32_t(lo + n), uint32_t(n - 1)) +
                       cfg.count_row_range(uint32_t(y), 0, uint32_t(hi));
    } else if (hi >= n) {
      counts.h_count = cfg.count_row_range(uint32_t(y), uint32_t(lo), uint32_t(n - 1)) +
                       cfg.count_row_range(uint32_t(y), 0, uint32_t(hi - n));
    } else {
      counts.h_count = cfg.count_row_range(uint32_t(y), uint32_t(lo), uint32_t(hi));
    }
    for (int64_t dy = -rho; dy <= rho; ++dy) counts.v_count += cfg.get(x, y + dy) ? 1u : 0u;
  } else {
    int64_t w = cfg.width(), h = cfg.height();
    if (y >= 0 && y < h) {
      int64_t lo = x - rho, hi = x + rho;
      if (lo < 0) lo = 0;
      if (hi > w - 1) hi = w - 1;
      if (lo <= hi) counts.h_count = cfg.count_row_range(uint32_t(y), uint32_t(lo), uint32_t(hi));
    }
    for (int64_t dy = -rho; dy <= rho; ++dy) counts.v_count += cfg.get(x, y + dy) ? 1u : 0u;
  }
  return counts;
}

Configuration random_configuration(uint32_t width, uint32_t height, Boundary boundary, double p,
                                   SplitMix64& rng) {
  if (p < 0.0 || p > 1.0) fail(Errc::BadConfig, "p must lie in [0, 1]");
  Configuration cfg(width, height, boundary);
  for (uint32_t y = 0; y < height; ++y)
    for (uint32_t x = 0; x < width; ++x)
      if (rng.next_bernoulli(p)) cfg.set(x, y);
  return cfg;
}

}  // namespace ydgrow
