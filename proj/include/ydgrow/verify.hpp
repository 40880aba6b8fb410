#pragma once

// Property suites: each suite runs a batch of randomized or exhaustive
// checks of one documented invariant and reports pass/fail counts. The
// suites are the library's executable contract; `ydgrow verify` runs them
// all and exits nonzero on any failure.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ydgrow/grid.hpp"
#include "ydgrow/rng.hpp"
#include "ydgrow/zeroset.hpp"

namespace ydgrow {

struct SuiteResult {
  std::string name;
  uint32_t checks = 0;
  uint32_t failures = 0;
  std::vector<std::string> messages;  // first few failure descriptions
  bool passed() const { return failures == 0; }
};

struct SuiteParams {
  uint64_t seed = 0x79d9b4e019ull;
  uint32_t scale = 1;  // multiplies randomized instance counts
  // Replaces the engine step in the oracle-equivalence suite; the self-test
  // passes a deliberately broken step to prove the suite catches it.
  std::function<uint64_t(Configuration&, const Rule&)> step_override;
};

struct Suite {
  const char* name;
  const char* description;
  SuiteResult (*fn)(const SuiteParams&);
};

const std::vector<Suite>& all_suites();

// Errors: BadConfig for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteParams& params = {});

std::vector<SuiteResult> run_all_suites(const SuiteParams& params = {});

// Random nonempty canonical zero set: height in [1, max_height], widths
// nonincreasing in [1, max_width]; bottom rows become infinite with
// probability 1/4 when allowed.
ZeroSet random_zero_set(SplitMix64& rng, uint32_t max_height, uint32_t max_width,
                        bool allow_infinite);

}  // namespace ydgrow
