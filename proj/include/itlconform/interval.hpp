#pragma once
// Set-based Binary64 intervals: closed connected subsets of the reals with
// Empty and Entire, tightest directed-rounding arithmetic, accurate-class
// elementary functions, exact set operations, numeric and boolean queries,
// and interval literal text I/O.
//
// An interval never stores -0.0: zeros are normalized to +0.0 at
// construction. Empty is represented with NaN endpoints and is observable
// only through is_empty(). Operations that can reject their input (interval
// construction, text conversion) return the interval together with a signal
// flag instead of throwing.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "itlconform/ops.hpp"

namespace itlconform {

enum class Signal : uint8_t {
  none,
  undefined_operation,
};

class Interval {
 public:
  // Default construction yields Empty.
  Interval() = default;

  static Interval empty() { return Interval(); }
  static Interval entire() {
    return unchecked(-std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity());
  }
  // Trusted endpoints: lo <= hi, lo < +inf, hi > -inf, no NaN. Zeros are
  // normalized. Use make_interval for unvalidated input.
  static Interval unchecked(double lo, double hi);

  bool is_empty() const { return empty_; }
  // Stored endpoints; NaN when empty.
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_ = std::numeric_limits<double>::quiet_NaN();
  double hi_ = std::numeric_limits<double>::quiet_NaN();
  bool empty_ = true;
};

struct IntervalResult {
  Interval value;  // Empty when signal != none
  Signal signal = Signal::none;
};

// Validated constructor: signals undefined_operation (and yields Empty) for
// lo > hi, lo == +inf, hi == -inf, or NaN endpoints.
IntervalResult make_interval(double lo, double hi);

// ---------------------------------------------------------------------------
// Arithmetic, tightest: each endpoint is the correctly rounded bound of the
// exact range. Any Empty input propagates to Empty. Division follows the
// set-based convention: zero divisor points are excluded, so x / [0,0] is
// Empty and a zero-endpoint divisor produces unbounded one-sided results.

Interval neg(const Interval& x);
Interval add(const Interval& x, const Interval& y);
Interval sub(const Interval& x, const Interval& y);
Interval mul(const Interval& x, const Interval& y);
Interval div(const Interval& x, const Interval& y);
Interval recip(const Interval& x);
Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval fma(const Interval& x, const Interval& y, const Interval& z);

// ---------------------------------------------------------------------------
// Elementary functions, accurate class: the result contains the tightest
// enclosure and each endpoint is at most one ulp step outside it. Endpoints
// come from the host libm (verified once per function against the
// high-precision evaluator; an untrusted function falls back to that
// evaluator) widened one step outward, with exact cases kept exact and the
// range clipped to the codomain. Arguments outside the natural domain are
// clipped; a wholly outside argument yields Empty.

Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval log2(const Interval& x);
Interval log10(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval tan(const Interval& x);
Interval atan(const Interval& x);
// Domain x > 0, extended with x = 0 for y > 0 (0^y = 0).
Interval pow(const Interval& x, const Interval& y);

// ---------------------------------------------------------------------------
// Set operations, exact.

Interval intersection(const Interval& x, const Interval& y);
Interval convex_hull(const Interval& x, const Interval& y);

// ---------------------------------------------------------------------------
// Numeric queries.
//   inf(Empty) = +inf, sup(Empty) = -inf, other queries on Empty are NaN.
//   mid(Entire) = 0; mid of a half-unbounded interval is +-kMaxReal; the
//   bounded case is the overflow-safe round-to-nearest midpoint.
//   rad rounds up so that [mid - rad, mid + rad] always covers x.
//   wid rounds up; mag and mig are exact.

double inf(const Interval& x);
double sup(const Interval& x);
double mid(const Interval& x);
double rad(const Interval& x);
double wid(const Interval& x);
double mag(const Interval& x);
double mig(const Interval& x);

// ---------------------------------------------------------------------------
// Boolean queries. is_member is false for NaN and for +-inf (members are
// real numbers only).

bool is_empty(const Interval& x);
bool is_entire(const Interval& x);
bool equal(const Interval& x, const Interval& y);
bool subset(const Interval& x, const Interval& y);
bool interior(const Interval& x, const Interval& y);
bool disjoint(const Interval& x, const Interval& y);
bool is_member(double v, const Interval& x);

// ---------------------------------------------------------------------------
// Text I/O. Accepted forms, case-insensitive, blanks allowed around tokens:
//   [l,u]   [p]   [empty]   [entire]
// with decimal or C99 hex-float numbers and the keywords inf/infinity.
// Inexact literals round outward, so the parsed interval contains the
// written one. Malformed or inconsistent text signals undefined_operation
// and yields Empty.
IntervalResult text_to_interval(std::string_view text);

enum class TextForm { hex, decimal };

// Canonical rendering: "[empty]", "[entire]", "[p]" for points, "[l,u]"
// otherwise. Hex endpoints round-trip exactly; decimal uses 17 significant
// digits, which reparse to a containing interval at most one ulp step wider
// per endpoint.
std::string interval_to_text(const Interval& x, TextForm form = TextForm::hex);

// ---------------------------------------------------------------------------
// Generic dispatch used by the conformance harness.

// Interval-valued operations (arith, elem, set_op). args.size() must match
// op_arity.
Interval eval_interval_op(Op op, std::span<const Interval> args);
double eval_numeric_op(Op op, const Interval& x);
// Predicates on intervals only; is_member is dispatched separately because
// it mixes a point argument with an interval.
bool eval_bool_op(Op op, std::span<const Interval> args);

}  // namespace itlconform
