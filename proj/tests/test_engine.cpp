#include <algorithm>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "ydgrow/engine.hpp"
#include "ydgrow/rng.hpp"

using namespace ydgrow;
using ydgrow::testing::code_of;

namespace {

// Synchronous update with an arbitrary evaluation order; the dynamics must
// not depend on the order sites are examined in.
uint64_t step_permuted(Configuration& cfg, const Rule& rule, SplitMix64& rng) {
  std::vector<std::pair<uint32_t, uint32_t>> cells;
  for (uint32_t y = 0; y < cfg.height(); ++y)
    for (uint32_t x = 0; x < cfg.width(); ++x)
      if (!cfg.get(x, y)) cells.emplace_back(x, y);
  for (size_t i = cells.size(); i > 1; --i)
    std::swap(cells[i - 1], cells[rng.next() % i]);
  std::vector<std::pair<uint32_t, uint32_t>> fire;
  for (auto [x, y] : cells) {
    CrossCounts cc = cross_counts(cfg, rule, x, y);
    if (rule.occupies(cc.h_count, cc.v_count)) fire.emplace_back(x, y);
  }
  int64_t t = cfg.max_birth_time() + 1;
  for (auto [x, y] : fire) cfg.occupy(x, y, t);
  return fire.size();
}

}  // namespace

TEST_CASE("single seed under the cross rule fills the box") {
  Rule rule(bootstrap_zero_set(1), 1);
  Configuration c(11, 11, Boundary::Zero);
  c.set(5, 5);
  Outcome out = run(c, rule, StopCondition::until_fixed());
  CHECK(out.stop_reason == StopReason::Fixed);
  CHECK(c.full());
  CHECK(c.birth_time(4, 5) == 1);
  CHECK(c.birth_time(5, 7) == 2);
  CHECK(c.birth_time(0, 0) == 10);  // l1 distance, one ring per step
  CHECK(out.newly_occupied_total == 120);
}

TEST_CASE("vertical pair grows exactly its column") {
  // Width-2 row zero set: occupation needs h >= 2 or v >= 1, so a vertical
  // pair extends to the full column and nothing else ever fires.
  Rule rule(line_zero_set(2, 1), 1);
  Configuration c(9, 9, Boundary::Zero);
  c.set(4, 4);
  c.set(4, 5);
  run(c, rule, StopCondition::until_fixed());
  CHECK(c.count_occupied() == 9);
  for (uint32_t y = 0; y < 9; ++y) CHECK(c.get(4, y));
  CHECK(c.birth_time(4, 3) == 1);
  CHECK(c.birth_time(4, 0) == 4);
}

TEST_CASE("until origin") {
  Rule rule(bootstrap_zero_set(1), 1);
  Configuration c(11, 11, Boundary::Zero);
  c.set(5, 5);
  Engine eng(c, rule);
  Outcome out = eng.run(StopCondition::until_origin(5, 8));
  CHECK(out.stop_reason == StopReason::OriginOccupied);
  CHECK(out.stop_time == 3);

  Configuration c2(11, 11, Boundary::Zero);
  Rule inert_rule(line_zero_set(2, 1), 1);
  c2.set(5, 5);
  Outcome capped = run(c2, inert_rule, StopCondition::until_origin(0, 0, 5));
  CHECK(capped.stop_reason == StopReason::TimeLimit);
  CHECK(capped.stop_time == 5);

  Configuration c3(5, 5, Boundary::Zero);
  CHECK(code_of([&] { run(c3, rule, StopCondition::until_origin(7, 0)); }) == Errc::BadConfig);
}

TEST_CASE("outcome on an already-full or empty box") {
  Rule rule(bootstrap_zero_set(1), 1);
  Configuration full_box(4, 4, Boundary::Zero);
  for (uint32_t y = 0; y < 4; ++y)
    for (uint32_t x = 0; x < 4; ++x) full_box.set(x, y);
  Outcome out = run(full_box, rule, StopCondition::until_fixed());
  CHECK(out.stop_reason == StopReason::Fixed);
  CHECK(out.stop_time == 0);
  CHECK(out.final_density == 1.0);

  Configuration empty_box(4, 4, Boundary::Zero);
  Outcome still = run(empty_box, rule, StopCondition::until_fixed());
  CHECK(still.stop_reason == StopReason::Fixed);
  CHECK(still.newly_occupied_total == 0);
  CHECK(still.final_density == 0.0);
}

TEST_CASE("engine matches the naive oracle and any scan order") {
  for (uint32_t k = 0; k < 25; ++k) {
    SplitMix64 rng(derive_seed(42, k));
    uint32_t h = 1 + uint32_t(rng.next() % 4);
    std::vector<Width> rows(h);
    uint32_t cur = 1 + uint32_t(rng.next() % 4);
    for (uint32_t v = 0; v < h; ++v) {
      rows[v] = cur;
      cur = 1 + uint32_t(rng.next() % cur);
    }
    if (rng.next() % 4 == 0) rows[0] = kInfWidth;
    if (h > 1 && rows[0] == kInfWidth && rng.next() % 2 == 0) rows[1] = kInfWidth;
    ZeroSet zs = ZeroSet::from_row_widths(rows);
    uint32_t rho = h + uint32_t(rng.next() % 2);
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t n = std::max(8u, 2 * rho + 1) + uint32_t(rng.next() % 10);
    Configuration a = random_configuration(
        n, n, periodic ? Boundary::Periodic : Boundary::Zero, 0.25, rng);
    Configuration b = a;
    Configuration c = a;
    Engine eng(a, rule);
    for (int si = 0; si < 24; ++si) {
      uint64_t na = eng.step();
      uint64_t nb = step_naive(b, rule);
      uint64_t nc = step_permuted(c, rule, rng);
      REQUIRE(na == nb);
      REQUIRE(na == nc);
      REQUIRE(a.same_cells(b));
      REQUIRE(a.same_birth_times(b));
      REQUIRE(a.same_cells(c));
      REQUIRE(a.same_birth_times(c));
      if (na == 0) break;
    }
  }
}

TEST_CASE("steps resume from the largest birth time") {
  Rule rule(bootstrap_zero_set(1), 1);
  Configuration c(9, 9, Boundary::Zero);
  c.set(4, 4);
  Engine first(c, rule);
  first.step();
  first.step();
  CHECK(first.time() == 2);
  Engine second(c, rule);  // fresh engine over the same state
  second.step();
  CHECK(c.birth_time(4, 7) == 3);
}

TEST_CASE("inertness") {
  Rule rule(line_zero_set(3, 2), 3);
  CHECK(is_inert(filled_adjacent_lines(1, Orientation::Horizontal, 12), rule));
  CHECK(!is_inert(filled_adjacent_lines(2, Orientation::Horizontal, 12), rule));
  CHECK(is_inert(filled_adjacent_lines(2, Orientation::Vertical, 12), rule));
  CHECK(!is_inert(filled_adjacent_lines(3, Orientation::Vertical, 12), rule));
  CHECK(is_inert(Configuration(12, 12, Boundary::Zero), rule));
}

TEST_CASE("seed patterns") {
  Configuration strip = packed_strip(Rule(line_zero_set(2, 2), 2), 16);
  CHECK(strip.width() == 16);
  CHECK(strip.count_occupied() == 3);  // staircase of the leading row width
  CHECK(strip.get(0, 0));
  CHECK(strip.get(1, 0));
  CHECK(strip.get(0, 1));

  Configuration diag = diagonal_nucleus(3, 9);
  CHECK(diag.count_occupied() == 3);
  CHECK(diag.get(0, 0));
  CHECK(diag.get(1, 1));
  CHECK(diag.get(2, 2));

  Configuration par = parallel_lines(2, 3, Orientation::Horizontal, 12);
  CHECK(par.count_occupied() == 24);
  CHECK(par.get(0, 0));
  CHECK(par.get(0, 3));

  Rule diag_rule(l_finite_zero_set(3, 1, 1), 3);
  Configuration grow = diagonal_nucleus(3, 15);
  Outcome out = run(grow, diag_rule, StopCondition::until_fixed());
  CHECK(out.stop_reason == StopReason::Fixed);
  bool square_filled_fast = true;
  for (uint32_t y = 0; y <= 2; ++y)
    for (uint32_t x = 0; x <= 2; ++x)
      square_filled_fast &= grow.get(x, y) && grow.birth_time(x, y) <= 3;
  CHECK(square_filled_fast);
}

TEST_CASE("saturated line dynamics") {
  Rule rule(line_zero_set(2, 2), 2);
  Configuration c(12, 12, Boundary::Zero);
  c.set(3, 3);
  c.set(4, 3);
  uint64_t added = saturated_line_step(c, rule, 5);
  CHECK(added == 10);  // the whole row fires: 2 occupied inside a length-5 window
  for (uint32_t x = 0; x < 12; ++x) CHECK(c.get(x, 3));

  Rule not_rect(bootstrap_zero_set(2), 2);
  Configuration d(12, 12, Boundary::Zero);
  CHECK(code_of([&] { saturated_line_step(d, not_rect, 5); }) == Errc::NotRectangular);
}
