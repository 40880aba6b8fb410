#include "doctest.h"
#include "test_util.hpp"
#include "ydgrow/grid.hpp"
#include "ydgrow/rng.hpp"

using namespace ydgrow;
using ydgrow::testing::code_of;

TEST_CASE("occupancy and birth times") {
  Configuration c(8, 5, Boundary::Zero);
  CHECK(c.cell_count() == 40);
  CHECK(c.count_occupied() == 0);
  CHECK(!c.get(3, 2));
  CHECK(c.occupy(3, 2, 0));
  CHECK(c.get(3, 2));
  CHECK(!c.occupy(3, 2, 7));  // solidified; birth time keeps its first value
  CHECK(c.birth_time(3, 2) == 0);
  CHECK(c.count_occupied() == 1);
  CHECK(c.occupy(0, 0, 4));
  CHECK(c.max_birth_time() == 4);
  CHECK(c.density() == doctest::Approx(2.0 / 40));
  CHECK(!c.full());
}

TEST_CASE("boundary lookups") {
  Configuration z(5, 5, Boundary::Zero);
  z.set(0, 0);
  CHECK(!z.get(-1, 0));
  CHECK(!z.get(0, 5));
  CHECK(z.get(0, 0));

  Configuration t(5, 5, Boundary::Periodic);
  t.set(0, 0);
  CHECK(t.get(5, 5));
  CHECK(t.get(-5, 0));
  CHECK(t.get(-10, 10));
  CHECK(!t.get(1, 0));

  CHECK(code_of([] { Configuration(4, 5, Boundary::Periodic); }) == Errc::BadConfig);
}

TEST_CASE("cross counts, zero boundary") {
  Configuration c(9, 9, Boundary::Zero);
  Rule rule(bootstrap_zero_set(1), 2);
  c.set(3, 2);
  c.set(5, 2);
  c.set(4, 4);
  CrossCounts at = cross_counts(c, rule, 4, 2);
  CHECK(at.h_count == 2);  // (3,2) and (5,2) inside the length-5 arm
  CHECK(at.v_count == 1);  // (4,4)
  CrossCounts center = cross_counts(c, rule, 4, 4);
  CHECK(center.h_count == 1);  // the site itself
  CHECK(center.v_count == 1);  // the site itself; column 4 holds nothing else
  CrossCounts edge = cross_counts(c, rule, 0, 0);
  CHECK(edge.h_count == 0);
  CHECK(edge.v_count == 0);
}

TEST_CASE("cross counts, torus") {
  Rule rule(bootstrap_zero_set(1), 2);
  Configuration t(5, 5, Boundary::Periodic);
  t.set(0, 0);
  CrossCounts wrapped = cross_counts(t, rule, 4, 0);
  CHECK(wrapped.h_count == 1);  // arm {2,3,4,0,1} wraps onto column 0
  CHECK(wrapped.v_count == 0);
  CrossCounts self = cross_counts(t, rule, 0, 3);
  CHECK(self.v_count == 1);  // arm {1,2,3,4,0} wraps onto row 0

  Configuration small(3, 3, Boundary::Periodic);
  CHECK(code_of([&] { cross_counts(small, rule, 0, 0); }) == Errc::TorusTooSmall);
}

TEST_CASE("row helpers") {
  Configuration c(130, 3, Boundary::Zero);
  c.set(0, 1);
  c.set(64, 1);
  c.set(129, 1);
  CHECK(c.words_per_row() == 3);
  CHECK(c.count_row_range(1, 0, 129) == 3);  // bounds are inclusive
  CHECK(c.count_row_range(1, 1, 129) == 2);
  CHECK(c.count_row_range(1, 64, 64) == 1);
  CHECK(c.count_row_range(0, 0, 129) == 0);
  CHECK((c.row_bits(1)[0] & 1) == 1);
  CHECK((c.row_bits(1)[1] & 1) == 1);
}

TEST_CASE("dump and load") {
  Configuration c(4, 3, Boundary::Zero);
  c.occupy(0, 0, 0);
  c.occupy(2, 1, 5);
  Configuration back = Configuration::load(c.dump());
  CHECK(back.width() == 4);
  CHECK(back.height() == 3);
  CHECK(back.boundary() == Boundary::Zero);
  CHECK(back.same_cells(c));
  CHECK(back.birth_time(2, 1) == 0);  // dumps carry occupancy only

  Configuration p(5, 5, Boundary::Periodic);
  p.set(4, 4);
  CHECK(Configuration::load(p.dump()).boundary() == Boundary::Periodic);
  CHECK(Configuration::load(p.dump()).same_cells(p));
  CHECK(code_of([] { Configuration::load("junk"); }) == Errc::ParseError);
}

TEST_CASE("random fill") {
  SplitMix64 rng(7);
  Configuration c = random_configuration(64, 64, Boundary::Zero, 0.3, rng);
  double d = c.density();
  CHECK(d > 0.2);
  CHECK(d < 0.4);

  SplitMix64 r1(7), r2(7);
  Configuration a = random_configuration(32, 16, Boundary::Zero, 0.5, r1);
  Configuration b = random_configuration(32, 16, Boundary::Zero, 0.5, r2);
  CHECK(a.same_cells(b));

  SplitMix64 r3(7);
  CHECK(random_configuration(16, 16, Boundary::Zero, 0.0, r3).count_occupied() == 0);
  SplitMix64 r4(7);
  CHECK(random_configuration(16, 16, Boundary::Zero, 1.0, r4).full());
}
