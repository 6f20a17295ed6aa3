#pragma once

#include <cstdint>
#include <span>

#include "itlconform/bigfloat.hpp"
#include "itlconform/ops.hpp"

// High-precision evaluation oracle.
//
// Everything here runs on the BigFloat engine and never consults the
// double-precision kernel, so results from the two routes are independent
// evidence.  The oracle answers one question: what is the tightest Binary64
// enclosure of the exact range of an operation over the given inputs, and can
// that enclosure be certified?
//
// Certification works by precision doubling.  A value is evaluated with
// outward-rounded bounds at q bits; if rounding both bounds to Binary64 in the
// same direction gives the same double for each side, that side is pinned and
// the result is certified.  Otherwise q doubles, up to a cap.  Reaching the
// cap yields a still-correct outward enclosure flagged certified == false;
// the oracle never returns an invalid enclosure.

namespace itlconform::oracle {

// Closed nonempty interval endpoints; lo <= hi, infinities allowed,
// lo != +inf, hi != -inf.
struct Iv {
  double lo = 0.0;
  double hi = 0.0;
};

struct Enclosure53 {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;      // the exact range is empty (domain miss)
  bool certified = false;  // both endpoints pinned to the tightest double
  int64_t q_final = 0;     // working precision that settled it; 0 means exact
};

// A pair of BigFloat bounds with lo <= true value <= hi.
struct BfI {
  bf::BigFloat lo;
  bf::BigFloat hi;
};

// Multiples of pi/2 lying inside [lo, hi], reported by residue class mod 4.
// sin attains +1 where k = 1 (mod 4), -1 where k = 3; cos attains +1 at
// k = 0, -1 at k = 2; tan has a pole at every odd k.
struct TrigPoints {
  bool sin_max = false;
  bool sin_min = false;
  bool cos_max = false;
  bool cos_min = false;
  bool pole = false;
};

// Tightest Binary64 enclosure of the exact range of op over the input box.
// Supported ops: arithmetic (neg, add, sub, mul, div, recip, sqr, sqrt, fma)
// and elementary (exp, log, log2, log10, sin, cos, tan, atan, pow).
// Inputs must be valid nonempty intervals; arity must match the op.
// Arithmetic results are always certified.  Out-of-domain slices are clipped;
// a fully out-of-domain input yields empty = true.
Enclosure53 tightest_eval(Op op, std::span<const Iv> args);

// Directed q-bit bound of an elementary function at a finite point:
// dir == down gives a value <= f(x), dir == up a value >= f(x).
// Domain violations (log of a nonpositive value, non-finite x) return NaN.
// Arguments in exp's saturation zones return the documented outer bounds
// rather than an exponent-overflowing value.
bf::BigFloat bf_elem(Op f, bf::Rnd dir, int64_t q, const bf::BigFloat& x);
bf::BigFloat bf_pow(bf::Rnd dir, int64_t q, const bf::BigFloat& x,
                    const bf::BigFloat& y);

// Exact classification of the multiples of pi/2 inside [lo, hi].
// Infinite endpoints report every class as present.
TrigPoints trig_points(double lo, double hi);

// Round-to-nearest double of k * pi/2 (used to aim points at reduction
// hot spots).
double pi_half_multiple_rn(int64_t k);

// Shared constants, bounded at the oracle's internal cap precision.
const BfI& pi_bounds();
const BfI& ln2_bounds();
const BfI& ln10_bounds();

}  // namespace itlconform::oracle
