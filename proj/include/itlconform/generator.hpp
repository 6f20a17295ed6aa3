#pragma once
// Deterministic test-suite generation, suite self-validation, and random
// point fuzzing.
//
// Every interval-valued expectation in a generated suite comes from the
// high-precision evaluator. Candidates it cannot certify are dropped and
// logged, never emitted. Numeric, boolean, decoration and text expectations
// are derived from the documented conventions of those operations; the
// provenance sidecar labels each assertion with its derivation and the
// working precision that settled it.
//
// Generation is a pure function of the plan: the same plan yields the same
// bytes for the suite and the sidecar on every run and platform. Testcases
// are named <category>.<op> and emitted in sorted order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itlconform/interval.hpp"
#include "itlconform/itl.hpp"
#include "itlconform/ops.hpp"
#include "itlconform/provider.hpp"

namespace itlconform::gen {

inline constexpr const char* kCategories[] = {
    "easy",       "signed-zero", "infinity",       "nan",
    "overflow",   "subnormal",   "binade",         "trig-reduction",
    "io-forms",   "decorations", "fuzz",
};

struct GenPlan {
  std::vector<Op> ops;                  // empty selects the whole vocabulary
  std::vector<std::string> categories;  // empty selects every category
  int count = 10;                       // assertions per op-category cell
  uint64_t seed = 1788;
};

struct GenResult {
  itl::TestSuite suite;
  std::string provenance;            // sidecar, one line per assertion
  std::vector<std::string> dropped;  // uncertifiable candidates, logged
  std::vector<std::string> notes;    // inapplicable cells and other remarks
};

GenResult generate(const GenPlan& plan);

struct ValidationReport {
  int checked = 0;       // interval expectations re-derived
  int confirmed = 0;
  int mismatched = 0;
  int unverifiable = 0;  // certification cap reached, listed below
  int structural = 0;    // expectation kinds outside the evaluator's reach
  std::vector<std::string> mismatches;
  std::vector<std::string> unverifiable_list;
};

// Recomputes every bare and decorated interval expectation and compares
// endpoints bitwise. Uncertifiable assertions are reported, never accepted.
ValidationReport self_validate(const itl::TestSuite& suite);

struct FuzzReport {
  int points = 0;
  int violations = 0;  // containment failures
  int errors = 0;      // provider crashes
  std::vector<std::string> details;
};

// Samples n points from x (and y for binary ops): always both endpoints,
// zero when contained, one subnormal when spanned, the rest uniform over
// the bit representations. Each point must satisfy both containment laws:
// the host's rounded f(point) lies in provider(op, x) within one ulp, and
// provider(op, [point, point]) is a subset of provider(op, x).
FuzzReport fuzz_check(harness::Provider& provider, Op op, const Interval& x,
                      const std::optional<Interval>& y, int n, uint64_t seed);

}  // namespace itlconform::gen
