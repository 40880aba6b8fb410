#include "ydgrow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>

#include "ydgrow/csv.hpp"
#include "ydgrow/engine.hpp"
#include "ydgrow/error.hpp"
#include "ydgrow/experiment.hpp"
#include "ydgrow/kernels.hpp"
#include "ydgrow/observables.hpp"
#include "ydgrow/theory.hpp"

namespace ydgrow {

ZeroSet random_zero_set(SplitMix64& rng, uint32_t max_height, uint32_t max_width,
                        bool allow_infinite) {
  uint32_t h = 1 + uint32_t(rng.next() % max_height);
  std::vector<Width> rows(h);
  uint32_t cur = 1 + uint32_t(rng.next() % max_width);
  for (uint32_t v = 0; v < h; ++v) {
    rows[v] = cur;
    cur = 1 + uint32_t(rng.next() % cur);
  }
  if (allow_infinite && rng.next() % 4 == 0) {
    uint32_t k = 1 + uint32_t(rng.next() % h);
    for (uint32_t v = 0; v < k; ++v) rows[v] = kInfWidth;
  }
  return ZeroSet::from_row_widths(rows);
}

namespace {

struct Checker {
  SuiteResult out;
  explicit Checker(const char* name) { out.name = name; }
  void check(bool ok, const std::string& msg) {
    ++out.checks;
    if (!ok) {
      ++out.failures;
      if (out.messages.size() < 8) out.messages.push_back(msg);
    }
  }
};

bool subset_of(const Configuration& a, const Configuration& b) {
  for (uint32_t y = 0; y < a.height(); ++y) {
    const uint64_t* wa = a.row_bits(y);
    const uint64_t* wb = b.row_bits(y);
    for (uint32_t w = 0; w < a.words_per_row(); ++w)
      if (wa[w] & ~wb[w]) return false;
  }
  return true;
}

Configuration transposed_config(const Configuration& c) {
  Configuration t(c.height(), c.width(), c.boundary());
  for (uint32_t y = 0; y < c.height(); ++y)
    for (uint32_t x = 0; x < c.width(); ++x)
      if (c.get(x, y)) t.occupy(y, x, c.birth_time(x, y));
  return t;
}

// Multi-source 4-adjacency distances (= l1 distance to the initial set),
// wrapping under periodic boundary.
std::vector<int32_t> l1_distances(const Configuration& c) {
  const int64_t w = c.width(), h = c.height();
  std::vector<int32_t> dist(size_t(w) * h, INT32_MAX);
  std::deque<std::pair<int64_t, int64_t>> queue;
  for (int64_t y = 0; y < h; ++y)
    for (int64_t x = 0; x < w; ++x)
      if (c.get(x, y)) {
        dist[size_t(y) * w + x] = 0;
        queue.emplace_back(x, y);
      }
  const bool wrap = c.boundary() == Boundary::Periodic;
  const int64_t dx[4] = {1, -1, 0, 0};
  const int64_t dy[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    int32_t d = dist[size_t(y) * w + x];
    for (int k = 0; k < 4; ++k) {
      int64_t nx = x + dx[k], ny = y + dy[k];
      if (wrap) {
        nx = (nx + w) % w;
        ny = (ny + h) % h;
      } else if (nx < 0 || nx >= w || ny < 0 || ny >= h) {
        continue;
      }
      if (dist[size_t(ny) * w + nx] > d + 1) {
        dist[size_t(ny) * w + nx] = d + 1;
        queue.emplace_back(nx, ny);
      }
    }
  }
  return dist;
}

uint32_t min_rho_for(const ZeroSet& zs) { return std::max<uint32_t>(1, zs.height()); }

// --- zeroset ---------------------------------------------------------------

SuiteResult suite_zeroset_roundtrip(const SuiteParams& P) {
  Checker c("zeroset-roundtrip");
  const uint32_t instances = 500 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x100000ull + k));
    ZeroSet z = random_zero_set(rng, 8, 8, true);
    std::string tag = " for set [" + z.to_text() + "]";
    c.check(ZeroSet::from_minimal_counts(z.minimal_counts()) == z, "minimal-count trip" + tag);
    c.check(ZeroSet::parse(z.to_text()) == z, "text trip" + tag);
    c.check(ZeroSet::from_json(z.to_json()) == z, "json trip" + tag);
    auto counts = z.minimal_counts();
    bool corners_ok = true;
    for (size_t i = 0; i < counts.size(); ++i) {
      const auto& mc = counts[i];
      corners_ok &= !z.contains(mc.u, mc.v);
      if (mc.u > 0) corners_ok &= z.contains(mc.u - 1, mc.v);
      if (mc.v > 0) corners_ok &= z.contains(mc.u, mc.v - 1);
      if (i) corners_ok &= counts[i].v > counts[i - 1].v && counts[i].u < counts[i - 1].u;
    }
    c.check(corners_ok, "corner minimality" + tag);
    c.check(!counts.empty() && counts.back().u == 0 && counts.back().v == z.height(),
            "(0,h) corner" + tag);
    for (int probe = 0; probe < 20; ++probe) {
      uint32_t u = uint32_t(rng.next() % 10), v = uint32_t(rng.next() % 10);
      if (z.contains(u, v)) {
        uint32_t u2 = u ? uint32_t(rng.next() % (u + 1)) : 0;
        uint32_t v2 = v ? uint32_t(rng.next() % (v + 1)) : 0;
        c.check(z.contains(u2, v2), "downward closure" + tag);
      }
    }
    uint32_t rho = std::max(min_rho_for(z), 4u + uint32_t(rng.next() % 5));
    ZeroSet n1 = z.normalized(rho);
    c.check(n1.normalized(rho) == n1, "normalize idempotence" + tag);
    if (!z.has_infinite_row()) c.check(z.transposed().transposed() == z, "transpose involution" + tag);
  }
  for (uint32_t r = 1; r <= 10; ++r) {
    ZeroSet b = bootstrap_zero_set(r);
    bool ok = true;
    for (uint32_t u = 0; u <= r + 2; ++u)
      for (uint32_t v = 0; v <= r + 2; ++v) ok &= b.contains(u, v) == (u + v <= r - 1);
    c.check(ok, "bootstrap membership r=" + std::to_string(r));
  }
  return c.out;
}

// --- grid ------------------------------------------------------------------

SuiteResult suite_cross_counts(const SuiteParams& P) {
  Checker c("cross-counts");
  const uint32_t instances = 50 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x200000ull + k));
    uint32_t rho = 1 + uint32_t(rng.next() % 5);
    Rule rule(bootstrap_zero_set(1), rho);  // counts depend only on rho
    bool periodic = rng.next() % 2 == 0;
    uint32_t nmin = 2 * rho + 1;
    uint32_t n = nmin + uint32_t(rng.next() % 24);
    uint32_t m = periodic ? n : nmin + uint32_t(rng.next() % 24);
    double p = 0.1 + 0.5 * rng.next_double();
    Configuration cfg = random_configuration(
        n, m, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    for (int probe = 0; probe < 200; ++probe) {
      int64_t x = int64_t(rng.next() % n), y = int64_t(rng.next() % m);
      CrossCounts got = cross_counts(cfg, rule, x, y);
      CrossCounts want;
      for (int64_t d = -int64_t(rho); d <= int64_t(rho); ++d) {
        want.h_count += cfg.get(x + d, y) ? 1 : 0;
        want.v_count += cfg.get(x, y + d) ? 1 : 0;
      }
      c.check(got == want, "mismatch at (" + std::to_string(x) + "," + std::to_string(y) +
                               ") instance " + std::to_string(k));
    }
    if (periodic) {
      uint32_t sx = uint32_t(rng.next() % n), sy = uint32_t(rng.next() % n);
      Configuration shifted(n, n, Boundary::Periodic);
      for (uint32_t y = 0; y < n; ++y)
        for (uint32_t x = 0; x < n; ++x)
          if (cfg.get(x, y)) shifted.set((x + sx) % n, (y + sy) % n);
      for (int probe = 0; probe < 50; ++probe) {
        int64_t x = int64_t(rng.next() % n), y = int64_t(rng.next() % n);
        CrossCounts a = cross_counts(shifted, rule, (x + sx) % n, (y + sy) % n);
        CrossCounts b = cross_counts(cfg, rule, x, y);
        c.check(a == b, "translation variance, instance " + std::to_string(k));
      }
    }
  }
  // A pattern at distance >= rho from every edge sees identical counts under
  // zero and periodic boundaries.
  for (uint32_t k = 0; k < 20 * P.scale; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x210000ull + k));
    uint32_t rho = 1 + uint32_t(rng.next() % 4);
    Rule rule(bootstrap_zero_set(1), rho);
    uint32_t n = 2 * rho + 8 + uint32_t(rng.next() % 16);
    Configuration zero(n, n, Boundary::Zero);
    Configuration peri(n, n, Boundary::Periodic);
    for (uint32_t y = rho; y < n - rho; ++y)
      for (uint32_t x = rho; x < n - rho; ++x)
        if (rng.next_bernoulli(0.3)) {
          zero.set(x, y);
          peri.set(x, y);
        }
    bool all = true;
    for (uint32_t y = 0; y < n; ++y)
      for (uint32_t x = 0; x < n; ++x)
        all &= cross_counts(zero, rule, x, y) == cross_counts(peri, rule, x, y);
    c.check(all, "zero/periodic margin agreement, instance " + std::to_string(k));
  }
  return c.out;
}

// --- engine ----------------------------------------------------------------

SuiteResult suite_oracle_equivalence(const SuiteParams& P) {
  Checker c("oracle-equivalence");
  const uint32_t instances = 60 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x300000ull + k));
    ZeroSet zs = random_zero_set(rng, 5, 5, true);
    uint32_t rho = std::min(5u, min_rho_for(zs) + uint32_t(rng.next() % 3));
    rho = std::max(rho, min_rho_for(zs));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t nmin = std::max(6u, 2 * rho + 1);
    uint32_t n = nmin + uint32_t(rng.next() % 28);
    uint32_t m = periodic ? n : nmin + uint32_t(rng.next() % 28);
    double p = 0.05 + 0.35 * rng.next_double();
    Configuration a = random_configuration(
        n, m, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    Configuration b = a;
    std::optional<Engine> eng;
    if (!P.step_override) eng.emplace(a, rule);
    for (int si = 0; si < 64; ++si) {
      uint64_t na = P.step_override ? P.step_override(a, rule) : eng->step();
      uint64_t nb = step_naive(b, rule);
      bool same = na == nb && a.same_cells(b) && a.same_birth_times(b);
      c.check(same, "zeroset [" + zs.to_text() + "] rho " + std::to_string(rho) +
                        " diverged at step " + std::to_string(si));
      if (!same || nb == 0) break;
    }
  }
  return c.out;
}

SuiteResult suite_solidification_monotonicity(const SuiteParams& P) {
  Checker c("solidification-monotonicity");
  const uint32_t instances = 200 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x400000ull + k));
    ZeroSet zs = random_zero_set(rng, 4, 4, true);
    uint32_t rho = std::min(4u, min_rho_for(zs) + uint32_t(rng.next() % 2));
    rho = std::max(rho, min_rho_for(zs));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t nmin = std::max(6u, 2 * rho + 1);
    uint32_t n = nmin + uint32_t(rng.next() % 20);
    uint32_t m = periodic ? n : nmin + uint32_t(rng.next() % 20);
    Boundary bd = periodic ? Boundary::Periodic : Boundary::Zero;
    double p1 = 0.05 + 0.3 * rng.next_double();
    double p2 = std::min(0.95, p1 + 0.05 + 0.25 * rng.next_double());
    uint64_t fill_seed = rng.next();
    SplitMix64 r1(fill_seed), r2(fill_seed);
    Configuration a = random_configuration(n, m, bd, p1, r1);
    Configuration b = random_configuration(n, m, bd, p2, r2);
    c.check(subset_of(a, b), "initial coupling, instance " + std::to_string(k));
    Engine ea(a, rule), eb(b, rule);
    for (int si = 0; si < 48; ++si) {
      Configuration before = a;
      uint64_t na = ea.step();
      uint64_t nb = eb.step();
      c.check(subset_of(before, a), "solidification violated, instance " + std::to_string(k));
      c.check(subset_of(a, b), "monotonicity violated, instance " + std::to_string(k));
      if (na == 0 && nb == 0) break;
    }
  }
  return c.out;
}

SuiteResult suite_speed_of_light(const SuiteParams& P) {
  Checker c("speed-of-light");
  const uint32_t instances = 40 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x500000ull + k));
    ZeroSet zs = random_zero_set(rng, 4, 4, true);
    uint32_t rho = std::min(3u, min_rho_for(zs) + uint32_t(rng.next() % 2));
    rho = std::max(rho, min_rho_for(zs));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t n = std::max(12u, 2 * rho + 1) + uint32_t(rng.next() % 32);
    double p = 0.02 + 0.2 * rng.next_double();
    Configuration cfg = random_configuration(
        n, n, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    uint64_t initial = cfg.count_occupied();
    std::vector<int32_t> dist = l1_distances(cfg);
    run(cfg, rule, StopCondition::until_fixed());
    if (initial == 0) {
      c.check(cfg.count_occupied() == 0, "growth from nothing, instance " + std::to_string(k));
      continue;
    }
    bool ok = true;
    for (uint32_t y = 0; y < n && ok; ++y)
      for (uint32_t x = 0; x < n; ++x) {
        int32_t t = cfg.birth_time(x, y);
        if (t == Configuration::kNever || t == 0) continue;
        if (uint64_t(dist[size_t(y) * n + x]) > uint64_t(rho) * uint64_t(t)) {
          ok = false;
          break;
        }
      }
    c.check(ok, "front outran rho per step, instance " + std::to_string(k));
  }
  return c.out;
}

SuiteResult suite_fixation_bound(const SuiteParams& P) {
  Checker c("fixation-bound");
  const uint32_t instances = 40 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x600000ull + k));
    ZeroSet zs = random_zero_set(rng, 4, 4, true);
    uint32_t rho = std::max(min_rho_for(zs), 1 + uint32_t(rng.next() % 3));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t n = std::max(8u, 2 * rho + 1) + uint32_t(rng.next() % 24);
    double p = 0.05 + 0.4 * rng.next_double();
    Configuration cfg = random_configuration(
        n, n, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    uint64_t initial = cfg.count_occupied();
    Outcome out = run(cfg, rule, StopCondition::until_fixed());
    std::string tag = ", instance " + std::to_string(k);
    c.check(out.stop_reason == StopReason::Fixed, "no fixation" + tag);
    c.check(out.stop_time <= int64_t(cfg.cell_count()) + 1, "fixation too late" + tag);
    c.check(out.newly_occupied_total == cfg.count_occupied() - initial, "growth accounting" + tag);
    c.check(is_inert(cfg, rule), "post-fixation activity" + tag);
    c.check(out.final_density == cfg.density(), "density echo" + tag);
  }
  return c.out;
}

SuiteResult suite_transpose_equivariance(const SuiteParams& P) {
  Checker c("transpose-equivariance");
  const uint32_t instances = 60 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x700000ull + k));
    ZeroSet zs = random_zero_set(rng, 3, 3, false);
    uint32_t rho = 3 + uint32_t(rng.next() % 2);
    Rule rule(zs, rho);
    Rule rule_t(zs.transposed(), rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t nmin = 2 * rho + 1;
    uint32_t n = nmin + uint32_t(rng.next() % 16);
    uint32_t m = periodic ? n : nmin + uint32_t(rng.next() % 16);
    double p = 0.05 + 0.35 * rng.next_double();
    Configuration a = random_configuration(
        n, m, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    Configuration b = transposed_config(a);
    Engine ea(a, rule), eb(b, rule_t);
    for (int si = 0; si < 40; ++si) {
      uint64_t na = ea.step();
      uint64_t nb = eb.step();
      Configuration at = transposed_config(a);
      bool same = na == nb && at.same_cells(b) && at.same_birth_times(b);
      c.check(same, "zeroset [" + zs.to_text() + "] diverged at step " + std::to_string(si));
      if (!same || na == 0) break;
    }
  }
  return c.out;
}

SuiteResult suite_domination(const SuiteParams& P) {
  Checker c("domination");
  const uint32_t instances = 500 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x800000ull + k));
    uint32_t r = 2 + uint32_t(rng.next() % 2);
    uint32_t s = 1 + uint32_t(rng.next() % r);
    Rule rule(line_zero_set(r, s), r + uint32_t(rng.next() % 2));
    uint32_t rho = rule.rho();
    bool periodic = rng.next() % 4 == 0;
    uint32_t n = std::max(14u, 2 * rho + 1) + uint32_t(rng.next() % 10);
    double p = 0.1 + 0.4 * rng.next_double();
    Configuration real = random_configuration(
        n, n, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    Configuration sat = real;
    Engine er(real, rule);
    for (int si = 0; si < 96; ++si) {
      uint64_t nr = er.step();
      saturated_line_step(sat, rule, 2 * rho + 1);
      if (!subset_of(real, sat)) {
        c.check(false, "saturated dynamics fell behind, instance " + std::to_string(k));
        break;
      }
      if (nr == 0) {
        c.check(true, "");
        break;
      }
    }
  }
  return c.out;
}

SuiteResult suite_inertness(const SuiteParams& P) {
  Checker c("inertness");
  const uint32_t instances = 100 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x900000ull + k));
    ZeroSet zs = random_zero_set(rng, 5, 4, true);
    uint32_t rho = std::max(min_rho_for(zs), 1 + uint32_t(rng.next() % 3));
    Rule rule(zs, rho);
    uint32_t n = std::max(10u, 2 * rho + 2) + uint32_t(rng.next() % 12);
    std::string tag = " zeroset [" + zs.to_text() + "] rho " + std::to_string(rho);
    uint32_t h = rule.zero_set().height();
    if (h >= 2) {
      Configuration lines = filled_adjacent_lines(h - 1, Orientation::Horizontal, n);
      c.check(is_inert(lines, rule), "h-1 horizontal lines fired" + tag);
    } else {
      Configuration empty(n, n, Boundary::Zero);
      c.check(is_inert(empty, rule), "empty box fired" + tag);
    }
    Width w0 = rule.zero_set().row_width(0);
    if (w0 == kInfWidth) {
      Configuration lines =
          filled_adjacent_lines(1 + uint32_t(rng.next() % 3), Orientation::Vertical, n);
      c.check(is_inert(lines, rule), "vertical lines fired under infinite row" + tag);
    } else if (w0 >= 2) {
      Configuration lines = filled_adjacent_lines(w0 - 1, Orientation::Vertical, n);
      c.check(is_inert(lines, rule), "w0-1 vertical lines fired" + tag);
    }
  }
  for (uint32_t k = 0; k < 60 * P.scale; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0x910000ull + k));
    ZeroSet zs = random_zero_set(rng, 4, 4, true);
    uint32_t rho = std::max(min_rho_for(zs), 1 + uint32_t(rng.next() % 2));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 3 == 0;
    uint32_t n = std::max(8u, 2 * rho + 1) + uint32_t(rng.next() % 12);
    double p = 0.1 + 0.5 * rng.next_double();
    Configuration cfg = random_configuration(
        n, n, periodic ? Boundary::Periodic : Boundary::Zero, p, rng);
    bool inert = is_inert(cfg, rule);
    uint64_t added = step_naive(cfg, rule);
    c.check(inert == (added == 0), "is_inert disagrees with step, instance " + std::to_string(k));
  }
  return c.out;
}

// --- observables -----------------------------------------------------------

SuiteResult suite_cone_consistency(const SuiteParams& P) {
  Checker c("cone-consistency");
  struct Case {
    ZeroSet zs;
    uint32_t rho;
  };
  const Case cases[] = {{bootstrap_zero_set(1), 1},
                        {line_zero_set(2, 1), 1},
                        {bootstrap_zero_set(2), 2},
                        {line_zero_set(2, 2), 2}};
  const double ps[] = {0.25, 0.4};
  uint32_t reps = 3 * P.scale;
  for (const Case& cs : cases) {
    Rule rule(cs.zs, cs.rho);
    for (double p : ps) {
      for (uint32_t rep = 0; rep < reps; ++rep) {
        uint64_t seed = derive_seed(P.seed, 0xA00000ull + rep * 131 + uint64_t(p * 1000));
        CensoredTime small = first_occupation_time(rule, p, 5, seed);
        CensoredTime large = first_occupation_time(rule, p, 11, seed);
        std::string tag = " [" + cs.zs.to_text() + "] p=" + format_double(p);
        if (!small.censored) {
          c.check(!large.censored && large.value == small.value,
                  "uncensored value changed with horizon" + tag);
        } else {
          c.check(large.censored || large.value > 5, "censoring inconsistent" + tag);
        }
      }
    }
  }
  return c.out;
}

SuiteResult suite_coupling_monotonicity(const SuiteParams& P) {
  Checker c("coupling-monotonicity");
  const uint32_t instances = 40 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0xB00000ull + k));
    Rule rule(k % 2 ? bootstrap_zero_set(2) : bootstrap_zero_set(1), k % 2 ? 2 : 1);
    double p_lo = 0.1 + 0.15 * rng.next_double();
    double p_hi = p_lo + 0.05 + 0.25 * rng.next_double();
    uint64_t seed = rng.next();
    CensoredTime lo = first_occupation_time(rule, p_lo, 12, seed);
    CensoredTime hi = first_occupation_time(rule, p_hi, 12, seed);
    if (!lo.censored)
      c.check(!hi.censored && hi.value <= lo.value,
              "occupation time increased with p, instance " + std::to_string(k));
    else
      c.check(true, "");

    uint32_t n = 10 + uint32_t(rng.next() % 16);
    SplitMix64 r1(seed), r2(seed);
    Configuration a = random_configuration(n, n, Boundary::Zero, p_lo, r1);
    Configuration b = random_configuration(n, n, Boundary::Zero, p_hi, r2);
    c.check(subset_of(a, b), "threshold coupling broken, instance " + std::to_string(k));
    SpanResult sa = spans(a, rule);
    SpanResult sb = spans(b, rule);
    if (sa.spanned)
      c.check(sb.spanned && sb.time <= sa.time,
              "spanning not monotone, instance " + std::to_string(k));
    else
      c.check(true, "");
  }
  return c.out;
}

SuiteResult suite_density_floor(const SuiteParams& P) {
  Checker c("density-floor");
  const uint32_t instances = 30 * P.scale;
  for (uint32_t k = 0; k < instances; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0xC00000ull + k));
    ZeroSet zs = random_zero_set(rng, 3, 3, true);
    uint32_t rho = std::max(min_rho_for(zs), 1 + uint32_t(rng.next() % 3));
    Rule rule(zs, rho);
    bool periodic = rng.next() % 2 == 0;
    uint32_t n = std::max(24u, 2 * rho + 1) + uint32_t(rng.next() % 24);
    double p = 0.1 + 0.5 * rng.next_double();
    double d = final_density(rule, n, p, periodic ? Boundary::Periodic : Boundary::Zero,
                             rng.next());
    double floor = p - 4.0 * std::sqrt(p * (1.0 - p)) / double(n);
    c.check(d >= floor, "density " + format_double(d) + " under floor " + format_double(floor) +
                            ", instance " + std::to_string(k));
  }
  return c.out;
}

// --- kernels ---------------------------------------------------------------

SuiteResult suite_kernel_equivalence(const SuiteParams& P) {
  Checker c("kernel-equivalence");
  if (!kernels::avx2_available()) {
    c.check(true, "");
    c.out.messages.push_back("avx2 not available on this host; scalar-only");
    return c.out;
  }
  const kernels::Ops& sc = kernels::scalar_ops();
  const kernels::Ops& vx = kernels::avx2_ops();
  const uint32_t rounds = 200 * P.scale;
  for (uint32_t k = 0; k < rounds; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0xD00000ull + k));
    size_t n = 1 + rng.next() % 200;
    size_t words = (n + 63) / 64;
    std::vector<uint64_t> bits(words);
    for (auto& w : bits) w = rng.next();
    if (n % 64) bits.back() &= (~0ull >> (64 - n % 64));
    std::vector<uint16_t> base(n);
    for (auto& v : base) v = uint16_t(1 + rng.next() % 500);

    std::vector<uint16_t> a = base, b = base;
    sc.bits_add_u16(a.data(), bits.data(), n);
    vx.bits_add_u16(b.data(), bits.data(), n);
    c.check(a == b, "bits_add mismatch, round " + std::to_string(k));
    sc.bits_sub_u16(a.data(), bits.data(), n);
    vx.bits_sub_u16(b.data(), bits.data(), n);
    c.check(a == b, "bits_sub mismatch, round " + std::to_string(k));

    uint16_t delta = uint16_t(rng.next() % 7) - 3;
    a = base;
    b = base;
    sc.range_add_u16(a.data(), n, delta);
    vx.range_add_u16(b.data(), n, delta);
    c.check(a == b, "range_add mismatch, round " + std::to_string(k));

    size_t cap_len = k % 10 == 0 ? 600 : 2 + rng.next() % 12;  // big len hits the gather fallback
    std::vector<uint16_t> cap(cap_len);
    for (auto& v : cap) v = uint16_t(rng.next() % 6);
    if (rng.next() % 3 == 0) cap[rng.next() % cap_len] = 0xFFFF;
    std::vector<uint16_t> h(n), v16(n);
    for (auto& x : h) x = uint16_t(rng.next() % 8);
    for (auto& x : v16) x = uint16_t(rng.next() % cap_len);
    std::vector<uint64_t> occ(words);
    for (auto& w : occ) w = rng.next();
    if (n % 64) occ.back() &= (~0ull >> (64 - n % 64));
    std::vector<uint64_t> oa(words, ~0ull), ob(words, 0ull);  // junk to prove it overwrites
    sc.classify_u16(h.data(), v16.data(), occ.data(), n, cap.data(), cap_len, oa.data());
    vx.classify_u16(h.data(), v16.data(), occ.data(), n, cap.data(), cap_len, ob.data());
    c.check(oa == ob, "classify mismatch, round " + std::to_string(k));
    if (n % 64)
      c.check((oa.back() & ~(~0ull >> (64 - n % 64))) == 0,
              "classify trailing bits set, round " + std::to_string(k));
  }
  return c.out;
}

// --- harness ---------------------------------------------------------------

ExperimentConfig small_estimate_t() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::EstimateT;
  cfg.zero_set = bootstrap_zero_set(1);
  cfg.rho = 1;
  cfg.p_grid = {0.3, 0.2};
  cfg.trials = 8;
  cfg.t_max = 16;
  cfg.t_max_cap = 32;
  cfg.master_seed = 99;
  return cfg;
}

SuiteResult suite_determinism(const SuiteParams& P) {
  Checker c("determinism");
  std::vector<ExperimentConfig> configs;
  configs.push_back(small_estimate_t());
  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::EstimateLc;
    cfg.zero_set = line_zero_set(1, 1);
    cfg.rho = 1;
    cfg.p_grid = {0.1};
    cfg.trials = 10;
    cfg.n_min = 4;
    cfg.n_max = 64;
    cfg.master_seed = P.seed;
    configs.push_back(cfg);
  }
  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Density;
    cfg.zero_set = bootstrap_zero_set(2);
    cfg.rho = 2;
    cfg.p_grid = {0.4, 0.2};
    cfg.trials = 6;
    cfg.n = 16;
    cfg.master_seed = P.seed;
    configs.push_back(cfg);
  }
  for (size_t ci = 0; ci < configs.size(); ++ci) {
    std::string trials1, agg1;
    for (uint32_t threads : {1u, 4u, 16u}) {
      ExperimentConfig cfg = configs[ci];
      cfg.threads = threads;
      ExperimentResult res = run_experiment(cfg);
      std::string t = write_trials_csv(res.trials);
      if (threads == 1) {
        trials1 = t;
        agg1 = res.aggregates_csv;
        c.check(!t.empty(), "");
      } else {
        c.check(t == trials1, "trial CSV differs at " + std::to_string(threads) +
                                  " threads, config " + std::to_string(ci));
        c.check(res.aggregates_csv == agg1, "aggregate CSV differs at " +
                                                std::to_string(threads) + " threads, config " +
                                                std::to_string(ci));
      }
    }
  }
  return c.out;
}

SuiteResult suite_censoring_policy(const SuiteParams& P) {
  Checker c("censoring-policy");
  (void)P;
  ExperimentConfig cfg = small_estimate_t();
  cfg.zero_set = bootstrap_zero_set(2);
  cfg.rho = 2;
  cfg.p_grid = {1e-9};
  cfg.trials = 5;
  cfg.t_max = 4;
  cfg.t_max_cap = 16;
  ExperimentResult res = run_experiment(cfg);
  c.check(res.medians.size() == 1, "aggregate count");
  if (!res.medians.empty()) {
    c.check(!res.medians[0].median_T.has_value(), "median reported from a censored majority");
    c.check(res.medians[0].t_max == 16, "doubling did not reach the cap");
    c.check(res.medians[0].censored == 5, "censor count");
  }
  for (const TrialRow& r : res.trials) c.check(r.censored && r.T == -1, "censored row shape");

  cfg.p_grid = {1.0};
  cfg.t_max = 4;
  ExperimentResult sure = run_experiment(cfg);
  c.check(sure.medians.size() == 1 && sure.medians[0].median_T &&
              *sure.medians[0].median_T == 0.0,
          "p=1 median");
  if (!sure.medians.empty()) c.check(sure.medians[0].t_max == 4, "p=1 should not double");
  return c.out;
}

SuiteResult suite_csv_roundtrip(const SuiteParams& P) {
  Checker c("csv-roundtrip");
  c.check(parse_trials_csv(write_trials_csv({})).empty(), "empty round trip");
  const char* experiments[] = {"estimate-t", "estimate-lc", "density", "simulate"};
  const char* boundaries[] = {"zero", "periodic"};
  for (uint32_t k = 0; k < 50 * P.scale; ++k) {
    SplitMix64 rng(derive_seed(P.seed, 0xE00000ull + k));
    std::vector<TrialRow> rows(rng.next() % 20);
    for (TrialRow& r : rows) {
      r.experiment = experiments[rng.next() % 4];
      r.zeroset = random_zero_set(rng, 5, 5, true).to_text();
      r.rho = uint32_t(rng.next() % 9);
      r.boundary = boundaries[rng.next() % 2];
      switch (rng.next() % 4) {
        case 0: r.p = rng.next_double(); break;
        case 1: r.p = 0.05; break;
        case 2: r.p = 1.0 / 3.0; break;
        default: r.p = 1e-12; break;
      }
      r.n = uint32_t(rng.next());
      r.trial = uint32_t(rng.next() % 10000);
      r.seed = rng.next();
      r.T = int64_t(rng.next() % 3 ? rng.next() % 100000 : -1);
      r.censored = rng.next() % 2;
      r.t_max = int64_t(rng.next() % 5000);
      r.wall_ms = 0;
    }
    c.check(parse_trials_csv(write_trials_csv(rows)) == rows,
            "round trip failed, batch " + std::to_string(k));
  }
  return c.out;
}

// --- theory ----------------------------------------------------------------

SuiteResult suite_theory_invariants(const SuiteParams& P) {
  Checker c("theory-invariants");
  (void)P;
  {
    bool ok = true;
    for (uint32_t r = 1; r <= 10000; ++r) {
      uint32_t viaceil = 0;  // smallest m with (2m+5)^2 >= 8r+9, exactly the ceiling form
      while ((2ull * viaceil + 5) * (2ull * viaceil + 5) < 8ull * r + 9) ++viaceil;
      if (viaceil != m_hat_bootstrap(r)) {
        ok = false;
        c.check(false, "m_hat characterizations split at r=" + std::to_string(r));
        break;
      }
    }
    if (ok) c.check(true, "");
  }
  for (uint32_t r = 2; r <= 100; ++r)
    for (uint32_t s = 1; s < r; ++s) {
      uint64_t m = 0;
      while ((2 * (m + 1) + 1) * (2 * (m + 1) + 1) <= 4ull * r + 9) ++m;
      m = std::min<uint64_t>(m, s / 2);
      Rational lower(int64_t(m) * (int64_t(r) - int64_t(m) + 1), 1 + int64_t(m));
      Rational upper(int64_t(r) * s, s + 1);
      c.check(lower <= upper, "equal-arm bounds cross at r=" + std::to_string(r) +
                                  " s=" + std::to_string(s));
      if (2 * s > r) {
        Rational lo4(int64_t(s) * (r - 1), r);
        Rational hi4(int64_t(s) * r - s + r, r + 1);
        c.check(hi4 - lo4 <= Rational(1, 2), "thin-arm gap over 1/2 at r=" + std::to_string(r) +
                                                 " s=" + std::to_string(s));
        c.check(lo4 <= hi4, "thin-arm bounds cross at r=" + std::to_string(r) +
                                " s=" + std::to_string(s));
      }
    }
  for (uint32_t r = 2; r <= 100; r += 7)
    for (uint32_t s2 = 1; s2 < r; s2 += 3)
      for (uint32_t s1 : {1u, 2u, 3u, 7u, 50u, 100u}) {
        Rational g = gamma_l_infinite(r, s1, s2).value;
        c.check(g > Rational(s2) && g < Rational(r),
                "infinite-arm power outside (s2, r) at r=" + std::to_string(r));
      }
  c.check(gamma_l_infinite(3, 2, 1).value == Rational(7, 3), "l-infinite (3,2,1)");
  c.check(gamma_l_infinite(2, 1, 1).value == Rational(3, 2), "l-infinite (2,1,1)");
  {
    Rational g = gamma_l_infinite(5, 1000000, 1).value;
    c.check(Rational(5) - g < Rational(1, 100000), "l-infinite large-arm limit");
  }
  // Catalog entries must agree with every parametric formula covering them.
  struct Expect {
    std::vector<Width> rows;
    Rational value;
  };
  const Expect parametric[] = {
      {{1}, gamma_line(1, 1).value},          {{2}, gamma_line(2, 1).value},
      {{3}, gamma_line(3, 1).value},          {{2, 2}, gamma_line(2, 2).value},
      {{3, 3}, gamma_line(3, 2).value},       {{3, 3, 3}, gamma_line(3, 3).value},
      {{2, 1}, gamma_bootstrap(2).value},     {{3, 2, 1}, gamma_bootstrap(3).value},
      {{3, 1, 1}, gamma_l_finite(3, 1, 1).exact->value},
  };
  for (const Expect& e : parametric) {
    ZeroSet z = ZeroSet::from_row_widths(e.rows);
    bool found = false;
    for (const CatalogEntry& entry : small_catalog())
      if (entry.zero_set == z) {
        found = true;
        c.check(entry.powers.is_exact() && entry.powers.exact->value == e.value,
                "catalog disagrees with formula for [" + z.to_text() + "]");
      }
    c.check(found, "catalog missing [" + z.to_text() + "]");
  }
  uint32_t bound_entries = 0;
  for (const CatalogEntry& entry : small_catalog()) {
    if (entry.powers.is_exact()) continue;
    ++bound_entries;
    c.check(entry.powers.lower && entry.powers.upper &&
                entry.powers.lower->value <= entry.powers.upper->value,
            "catalog bound pair out of order for [" + entry.zero_set.to_text() + "]");
  }
  c.check(small_catalog().size() == 15, "catalog size");
  c.check(bound_entries == 2, "catalog bound-pair count");
  return c.out;
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = {
      {"zeroset-roundtrip", "canonical form, minimal counts, serialization", suite_zeroset_roundtrip},
      {"cross-counts", "window counts vs direct scans, translation, boundary margins",
       suite_cross_counts},
      {"oracle-equivalence", "incremental engine vs naive reference, bit-exact",
       suite_oracle_equivalence},
      {"solidification-monotonicity", "no cell clears; larger starts stay larger",
       suite_solidification_monotonicity},
      {"speed-of-light", "growth travels at most rho per step", suite_speed_of_light},
      {"fixation-bound", "until-fixed terminates within cells+1 steps", suite_fixation_bound},
      {"transpose-equivariance", "transposing rule and box commutes with stepping",
       suite_transpose_equivariance},
      {"domination", "saturated line dynamics bounds real line growth", suite_domination},
      {"inertness", "known inert patterns stay inert; is_inert matches step",
       suite_inertness},
      {"cone-consistency", "occupation times are stable under larger horizons",
       suite_cone_consistency},
      {"coupling-monotonicity", "shared-field coupling is monotone in p",
       suite_coupling_monotonicity},
      {"density-floor", "final density respects the initial-fill concentration floor",
       suite_density_floor},
      {"kernel-equivalence", "vector kernels match scalar bit-exactly", suite_kernel_equivalence},
      {"determinism", "CSV bytes identical across 1, 4, 16 workers", suite_determinism},
      {"censoring-policy", "no median from censored majorities; doubling capped",
       suite_censoring_policy},
      {"csv-roundtrip", "parse(write(rows)) == rows", suite_csv_roundtrip},
      {"theory-invariants", "bound orderings, m-hat identity, catalog consistency",
       suite_theory_invariants},
  };
  return suites;
}

SuiteResult run_suite(std::string_view name, const SuiteParams& params) {
  for (const Suite& s : all_suites())
    if (name == s.name) return s.fn(params);
  fail(Errc::BadConfig, "unknown suite: '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_all_suites(const SuiteParams& params) {
  std::vector<SuiteResult> results;
  for (const Suite& s : all_suites()) results.push_back(s.fn(params));
  return results;
}

}  // namespace ydgrow
