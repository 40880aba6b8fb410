#include "doctest.h"
#include "test_util.hpp"
#include "ydgrow/observables.hpp"
#include "ydgrow/rng.hpp"

using namespace ydgrow;
using ydgrow::testing::code_of;

TEST_CASE("rng streams") {
  CHECK(splitmix64_once(0) == 0xe220a8397b1dcdafull);  // published reference value
  SplitMix64 a(1234), b(1234);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(5, 7) == splitmix64_once(5 ^ 7));

  SplitMix64 c(99);
  for (int i = 0; i < 1000; ++i) {
    double u = c.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(field_u64(3, 10, -4) == field_u64(3, 10, -4));
  CHECK(field_u64(3, 10, -4) != field_u64(4, 10, -4));
  CHECK(field_u64(3, 10, -4) != field_u64(3, -4, 10));
}

TEST_CASE("first occupation time") {
  Rule rule(bootstrap_zero_set(1), 1);
  CensoredTime sure = first_occupation_time(rule, 1.0, 8, 42);
  CHECK(!sure.censored);
  CHECK(sure.value == 0);

  CensoredTime never = first_occupation_time(rule, 1e-12, 6, 42);
  CHECK(never.censored);
  CHECK(never.t_max == 6);

  // Horizon extension never changes an uncensored value: the Bernoulli field
  // is keyed by absolute position, and influence moves at most rho per step.
  for (uint64_t s = 0; s < 30; ++s) {
    CensoredTime t1 = first_occupation_time(rule, 0.3, 4, s);
    CensoredTime t2 = first_occupation_time(rule, 0.3, 9, s);
    if (!t1.censored) {
      CHECK(!t2.censored);
      CHECK(t2.value == t1.value);
    } else if (!t2.censored) {
      CHECK(t2.value > 4);
    }
  }
}

TEST_CASE("cone memory accounting") {
  Rule rule(bootstrap_zero_set(2), 2);
  CHECK(cone_memory_bytes(rule, 4) < cone_memory_bytes(rule, 8));
  CHECK(code_of([&] { first_occupation_time(rule, 0.5, 1 << 20, 1, 1000); }) ==
        Errc::MemoryBudgetExceeded);
}

TEST_CASE("spanning") {
  Rule rule(bootstrap_zero_set(1), 1);
  Configuration one(8, 8, Boundary::Zero);
  one.set(3, 3);
  SpanResult r = spans(one, rule);
  CHECK(r.spanned);
  CHECK(r.time == 8);  // one l1 ring per step from (3,3); corner (7,7) is last

  Configuration empty(8, 8, Boundary::Zero);
  SpanResult still = spans(empty, rule);
  CHECK(!still.spanned);

  SpanningEstimate sure = spanning_probability(rule, 6, 1.0, 10, 7);
  CHECK(sure.p_hat == 1.0);
  CHECK(sure.spanned == 10);
  CHECK(sure.details.size() == 10);
  SpanningEstimate never = spanning_probability(rule, 6, 1e-12, 10, 7);
  CHECK(never.p_hat == 0.0);
  CHECK(never.ci.lo == 0.0);
}

TEST_CASE("wilson interval") {
  WilsonInterval half = wilson95(5, 10);
  CHECK(half.lo == doctest::Approx(0.236593090512564).epsilon(1e-12));
  CHECK(half.hi == doctest::Approx(0.7634069094874361).epsilon(1e-12));
  WilsonInterval none = wilson95(0, 10);
  CHECK(none.lo == 0.0);
  CHECK(none.hi == doctest::Approx(0.2775327998628892).epsilon(1e-12));
  WilsonInterval all = wilson95(10, 10);
  CHECK(all.lo == doctest::Approx(0.7224672001371107).epsilon(1e-12));
  CHECK(all.hi <= 1.0);
  WilsonInterval w37 = wilson95(37, 100);
  CHECK(w37.lo == doctest::Approx(0.2818236053432453).epsilon(1e-12));
  CHECK(w37.hi == doctest::Approx(0.46779470419057084).epsilon(1e-12));
  WilsonInterval single = wilson95(1, 1);
  CHECK(single.lo == doctest::Approx(0.20654931437723745).epsilon(1e-12));
  CHECK(single.hi == 1.0);
  CHECK(code_of([] { wilson95(0, 0); }) == Errc::BadConfig);
}

TEST_CASE("critical length") {
  Rule rule(line_zero_set(1, 1), 1);
  // Under the width-1 rule any nonempty box fills, so the critical length is
  // reached as soon as P(nonempty) crosses one half.
  LcEstimate est = critical_length(rule, 0.2, 40, 2, 256, 11);
  CHECK(est.n_star >= 2);
  CHECK(est.trials_per_n == 40);
  CHECK(!est.probe_points.empty());
  for (size_t i = 1; i < est.probe_points.size(); ++i)
    CHECK(est.probe_points[i].n > est.probe_points[i - 1].n);
  bool found = false;
  for (const ProbePoint& pp : est.probe_points)
    if (pp.n == est.n_star) {
      found = true;
      CHECK(pp.p_hat >= 0.5);
    }
  CHECK(found);

  CHECK(code_of([&] { critical_length(rule, 1e-12, 10, 2, 8, 11); }) == Errc::NotBracketed);
  CHECK(code_of([&] { critical_length(rule, 0.2, 10, 9, 8, 11); }) == Errc::BadConfig);
}

TEST_CASE("final density") {
  Rule inert(line_zero_set(3, 3), 3);  // nothing fires below three aligned cells
  double d = final_density(inert, 24, 0.3, Boundary::Zero, 5);
  CHECK(d >= 0.2);
  CHECK(d <= 1.0);
  double sure = final_density(Rule(bootstrap_zero_set(1), 1), 16, 0.2, Boundary::Periodic, 5);
  CHECK(sure == 1.0);  // a single seed fills everything under the cross rule
}
