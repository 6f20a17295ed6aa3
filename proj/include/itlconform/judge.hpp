#pragma once
// Verdict policy for conformance assertions. Three accuracy bands:
//
//   tightest  computed equals expected endpoint for endpoint (signed zeros
//             compare equal).
//   accurate  expected is contained in computed, and computed is contained
//             in next_out(expected), i.e. expected with each finite endpoint
//             moved one floating-point step outward.
//   valid     expected is contained in computed. Anything the accurate band
//             accepts passes. Beyond that, a bounded expected interval also
//             bounds the computed one: the computed width may exceed the
//             expected width by at most a factor (1 + tau) plus two units in
//             the last place of the expected magnitude, so point expecteds
//             do not force tau toward infinity. An unbounded or empty
//             expected interval demands containment only.
//
// The bands are strictly ordered: a pass at tightest implies a pass at
// accurate, which implies a pass at valid for every tau >= 0.

#include <cstdint>
#include <string>
#include <string_view>

#include "itlconform/decoration.hpp"
#include "itlconform/interval.hpp"

namespace itlconform::judge {

enum class AccuracyMode : uint8_t { tightest, accurate, valid };

enum class Status : uint8_t { pass, fail, skip_unsupported, skip_flavor, error };

struct Verdict {
  Status status = Status::pass;
  std::string reason;  // nonempty whenever status is not pass
};

std::string_view mode_name(AccuracyMode m);
std::string_view status_name(Status s);

// Each finite endpoint moved one step outward; empty stays empty.
Interval next_out(const Interval& x);

Verdict judge_interval(const Interval& computed, const Interval& expected,
                       AccuracyMode mode, double tau = 0.0);

// Bare parts judged as above. Decorations: tightest demands equality;
// accurate and valid accept a computed decoration stronger than expected.
// NaI never matches anything but NaI.
Verdict judge_decorated(const DecoratedInterval& computed,
                        const DecoratedInterval& expected, AccuracyMode mode,
                        double tau = 0.0);

// Bitwise, except every NaN matches every NaN. +0 and -0 are distinct.
Verdict judge_numeric(double computed, double expected);

Verdict judge_boolean(bool computed, bool expected);

// The only signal in the vocabulary is undefined_operation; an assertion
// either expects it or expects silence. A missing signal fails, and so does
// a spurious one.
Verdict judge_signal(bool observed_undefined, bool expected_undefined);

}  // namespace itlconform::judge
