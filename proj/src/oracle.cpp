#include "itlconform/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace itlconform::oracle {
namespace {

using bf::BigFloat;
using bf::BigUint;
using bf::Rnd;

constexpr int64_t kConstPrec = 5504;
constexpr int64_t kQFirst = 64;
constexpr int64_t kQCap = 4096;

const double kInf = std::numeric_limits<double>::infinity();
const double kQNan = std::numeric_limits<double>::quiet_NaN();
const double kMaxD = std::numeric_limits<double>::max();
const double kDenormMin = std::numeric_limits<double>::denorm_min();

BigFloat bf_one() { return BigFloat::from_i64(1); }
BigFloat bfd(double d) { return BigFloat::from_double(d); }

int64_t to_i64(const BigFloat& v) {
  const double d = v.to_double(Rnd::nearest);
  assert(std::fabs(d) < 9.0e15);
  return static_cast<int64_t>(std::llround(d));
}

// ---------------------------------------------------------------------------
// Interval helpers over BigFloat bounds.  Every function keeps the invariant
// lo <= true value <= hi by rounding the two sides outward at w bits.

BfI i_exact(const BigFloat& v) { return {v, v}; }

BfI i_neg(const BfI& a) { return {a.hi.negated(), a.lo.negated()}; }

BfI i_scalb(const BfI& a, int64_t k) { return {a.lo.scalb(k), a.hi.scalb(k)}; }

BfI i_add(const BfI& a, const BfI& b, int64_t w) {
  return {add(a.lo, b.lo, w, Rnd::down), add(a.hi, b.hi, w, Rnd::up)};
}

BfI i_sub(const BfI& a, const BfI& b, int64_t w) {
  return {sub(a.lo, b.hi, w, Rnd::down), sub(a.hi, b.lo, w, Rnd::up)};
}

BfI i_mul(const BfI& a, const BfI& b, int64_t w) {
  const BigFloat* as[2] = {&a.lo, &a.hi};
  const BigFloat* bs[2] = {&b.lo, &b.hi};
  BfI r;
  bool first = true;
  for (const BigFloat* x : as) {
    for (const BigFloat* y : bs) {
      BigFloat d = mul(*x, *y, w, Rnd::down);
      BigFloat u = mul(*x, *y, w, Rnd::up);
      if (first) {
        r = {std::move(d), std::move(u)};
        first = false;
      } else {
        if (BigFloat::compare(d, r.lo) < 0) r.lo = std::move(d);
        if (BigFloat::compare(u, r.hi) > 0) r.hi = std::move(u);
      }
    }
  }
  return r;
}

// Divisor must not straddle zero.
BfI i_div(const BfI& a, const BfI& b, int64_t w) {
  assert(b.lo.negative() == b.hi.negative() && !b.lo.is_zero() &&
         !b.hi.is_zero());
  const BigFloat* as[2] = {&a.lo, &a.hi};
  const BigFloat* bs[2] = {&b.lo, &b.hi};
  BfI r;
  bool first = true;
  for (const BigFloat* x : as) {
    for (const BigFloat* y : bs) {
      BigFloat d = div(*x, *y, w, Rnd::down);
      BigFloat u = div(*x, *y, w, Rnd::up);
      if (first) {
        r = {std::move(d), std::move(u)};
        first = false;
      } else {
        if (BigFloat::compare(d, r.lo) < 0) r.lo = std::move(d);
        if (BigFloat::compare(u, r.hi) > 0) r.hi = std::move(u);
      }
    }
  }
  return r;
}

BfI i_div_u(const BfI& a, int64_t n, int64_t w) {
  assert(n > 0);
  const BigFloat d = BigFloat::from_i64(n);
  return {div(a.lo, d, w, Rnd::down), div(a.hi, d, w, Rnd::up)};
}

BfI i_sqrt(const BfI& a, int64_t w) {
  return {sqrt(a.lo, w, Rnd::down), sqrt(a.hi, w, Rnd::up)};
}

BigFloat abs_hi(const BfI& a) {
  BigFloat x = a.lo.abs();
  BigFloat y = a.hi.abs();
  return BigFloat::abs_compare(x, y) >= 0 ? x : y;
}

void i_widen(BfI& a, const BigFloat& pad, int64_t w) {
  a.lo = sub(a.lo, pad, w, Rnd::down);
  a.hi = add(a.hi, pad, w, Rnd::up);
}

bool small_enough(const BigFloat& m, int64_t w) {
  return m.is_zero() || m.top_exp() < -(w + 8);
}

// ---------------------------------------------------------------------------
// Shared constants.
//
// pi   = 16*atan(1/5) - 4*atan(1/239)
// ln2  = 2*atanh(1/3)
// ln10 = 3*ln2 + 2*atanh(1/9)
//
// atan(1/m) and atanh(1/m) are series over exact rationals
// 1/((2j+1)*m^(2j+1)); each term is bracketed by two directed divisions and
// the truncated tail is absorbed by widening one side.

BfI reciprocal_series(uint64_t m, bool alternating, int64_t prec) {
  const int64_t w = prec + 16;
  const BigFloat one = bf_one();
  const uint64_t m2 = m * m;
  BigUint power = BigUint::from_u64(m);
  BfI sum{BigFloat::zero(), BigFloat::zero()};
  bool subtract = false;
  for (uint64_t j = 0;; ++j) {
    const BigFloat den =
        BigFloat::from_parts(false, mul_u64(power, 2 * j + 1), 0);
    const BigFloat t_lo = div(one, den, w, Rnd::down);
    const BigFloat t_hi = div(one, den, w, Rnd::up);
    if (static_cast<int64_t>(power.bit_length()) > prec + 8) {
      // Tail bound: remaining terms sum to less than t * 9/8 in magnitude
      // (ratio at most 1/m^2 <= 1/9); for the alternating series the tail
      // carries the sign of the next term.
      const BigFloat pad =
          mul(t_hi, BigFloat::from_parts(false, BigUint::from_u64(9), -3), w,
              Rnd::up);
      if (alternating && subtract) {
        sum.lo = sub(sum.lo, pad, w, Rnd::down);
      } else {
        sum.hi = add(sum.hi, pad, w, Rnd::up);
      }
      return sum;
    }
    if (subtract) {
      sum.lo = sub(sum.lo, t_hi, w, Rnd::down);
      sum.hi = sub(sum.hi, t_lo, w, Rnd::up);
    } else {
      sum.lo = add(sum.lo, t_lo, w, Rnd::down);
      sum.hi = add(sum.hi, t_hi, w, Rnd::up);
    }
    if (alternating) subtract = !subtract;
    power = mul_u64(power, m2);
  }
}

struct ConstTable {
  BfI pi, ln2, ln10;

  ConstTable() {
    const int64_t w = kConstPrec + 16;
    const BfI a5 = reciprocal_series(5, true, kConstPrec);
    const BfI a239 = reciprocal_series(239, true, kConstPrec);
    pi.lo = sub(a5.lo.scalb(4), a239.hi.scalb(2), w, Rnd::down);
    pi.hi = sub(a5.hi.scalb(4), a239.lo.scalb(2), w, Rnd::up);

    const BfI h3 = reciprocal_series(3, false, kConstPrec);
    ln2 = i_scalb(h3, 1);

    const BfI h9 = reciprocal_series(9, false, kConstPrec);
    const BigFloat three = BigFloat::from_i64(3);
    ln10.lo = add(mul(ln2.lo, three, w, Rnd::down), h9.lo.scalb(1), w,
                  Rnd::down);
    ln10.hi = add(mul(ln2.hi, three, w, Rnd::up), h9.hi.scalb(1), w, Rnd::up);
  }
};

const ConstTable& consts() {
  static const ConstTable table;
  return table;
}

BfI const_at(const BfI& c, int64_t w) {
  assert(w <= kConstPrec);
  return {c.lo.rounded(w, Rnd::down), c.hi.rounded(w, Rnd::up)};
}

// ---------------------------------------------------------------------------
// Point evaluators.  Each returns a BfI bracketing the exact value of the
// function at a finite BigFloat point, computed with w working bits.  The
// series all widen their final sum by a rigorous tail bound, so the brackets
// stay valid at every precision.

BfI exp_small(const BfI& r, int64_t w) {
  // |r| <= 0.8; tail after term n is below |term_n| for n >= 2.
  BfI term = i_exact(bf_one());
  BfI sum = term;
  for (int64_t n = 1; n <= 800; ++n) {
    term = i_mul(term, r, w);
    term = i_div_u(term, n, w);
    sum = i_add(sum, term, w);
    const BigFloat m = abs_hi(term);
    if (small_enough(m, w)) {
      i_widen(sum, m, w);
      return sum;
    }
  }
  assert(false && "exp series failed to converge");
  return sum;
}

// Requires |x| < 2^12; callers saturate exp long before that.
BfI exp_point(const BigFloat& x, int64_t w) {
  if (x.is_zero()) return i_exact(bf_one());
  assert(x.is_finite() && x.top_exp() <= 12);
  int64_t k = 0;
  BfI r = i_exact(x);
  if (x.top_exp() >= -1) {
    const int64_t wi = w + 32;
    const BfI l2 = const_at(consts().ln2, wi);
    const BfI t = i_div(i_exact(x), l2, wi);
    const BigFloat kf = t.lo.round_to_integer();
    k = to_i64(kf);
    r = i_sub(i_exact(x), i_mul(l2, i_exact(kf), wi), wi);
    assert(abs_hi(r).top_exp() <= 0);
  }
  return i_scalb(exp_small(r, w), k);
}

// log of a mantissa in [1, 2) via 2*atanh((m-1)/(m+1)).
BfI log_mant(const BigFloat& m, int64_t w) {
  const BigFloat one = bf_one();
  if (BigFloat::compare(m, one) == 0) return i_exact(BigFloat::zero());
  const BigFloat num = add_exact(m, one.negated());
  const BigFloat den = add_exact(m, one);
  const BfI z = i_div(i_exact(num), i_exact(den), w);
  const BfI z2 = i_mul(z, z, w);
  BfI pow = z;
  BfI sum = z;
  for (int64_t j = 1; j <= 1700; ++j) {
    pow = i_mul(pow, z2, w);
    const BfI contrib = i_div_u(pow, 2 * j + 1, w);
    sum = i_add(sum, contrib, w);
    const BigFloat t = abs_hi(contrib);
    if (small_enough(t, w)) {
      i_widen(sum, t, w);  // geometric tail, ratio z^2 <= 1/9
      return i_scalb(sum, 1);
    }
  }
  assert(false && "log series failed to converge");
  return sum;
}

BfI log_point(const BigFloat& x, int64_t w) {
  assert(x.is_finite() && !x.is_zero() && !x.negative());
  const int64_t wi = w + 32;
  const int64_t e = x.top_exp() - 1;
  const BfI lm = log_mant(x.scalb(-e), wi);
  if (e == 0) return lm;
  const BfI el2 =
      i_mul(const_at(consts().ln2, wi), i_exact(BigFloat::from_i64(e)), wi);
  return i_add(el2, lm, wi);
}

// ---------------------------------------------------------------------------
// Trigonometry.  Arguments are reduced by the nearest multiple k of pi/2,
// with pi taken wide enough to survive the cancellation (the closest any
// Binary64 gets to a nonzero multiple of pi/2 is around 2^-61 absolute, and
// the reduction carries top_exp(x) + 96 spare bits).

unsigned mod4_of(const BigFloat& k) {
  const unsigned a = k.abs_mod4();
  return k.negative() ? ((4u - a) & 3u) : a;
}

struct Reduced {
  BfI r;        // x - k*pi/2, |r| < 1
  unsigned m4;  // k mod 4
};

Reduced trig_reduce(const BigFloat& x, int64_t w) {
  assert(x.is_finite());
  if (x.is_zero() || x.top_exp() <= -2) return {i_exact(x), 0};
  const int64_t w2 = w + std::max<int64_t>(0, x.top_exp()) + 96;
  const BfI ph = i_scalb(const_at(consts().pi, w2), -1);
  const BfI t = i_div(i_exact(x), ph, w2);
  const BigFloat k = t.lo.round_to_integer();
  if (k.is_zero()) return {i_exact(x), 0};
  BfI r = i_sub(i_exact(x), i_mul(ph, i_exact(k), w2), w2);
  r.lo = r.lo.rounded(w, Rnd::down);
  r.hi = r.hi.rounded(w, Rnd::up);
  const BigFloat rm = abs_hi(r);
  assert(rm.is_zero() || rm.top_exp() <= 0);
  (void)rm;
  return {r, mod4_of(k)};
}

BfI sin_small(const BfI& r, int64_t w) {
  // |r| <= 0.8, alternating; tail below the first omitted term.
  BfI term = r;
  BfI sum = r;
  const BfI r2 = i_mul(r, r, w);
  for (int64_t j = 1; j <= 800; ++j) {
    term = i_neg(i_mul(term, r2, w));
    term = i_div_u(term, (2 * j) * (2 * j + 1), w);
    sum = i_add(sum, term, w);
    const BigFloat m = abs_hi(term);
    if (small_enough(m, w)) {
      i_widen(sum, m, w);
      return sum;
    }
  }
  assert(false && "sin series failed to converge");
  return sum;
}

BfI cos_small(const BfI& r, int64_t w) {
  BfI term = i_exact(bf_one());
  BfI sum = term;
  const BfI r2 = i_mul(r, r, w);
  for (int64_t j = 1; j <= 800; ++j) {
    term = i_neg(i_mul(term, r2, w));
    term = i_div_u(term, (2 * j - 1) * (2 * j), w);
    sum = i_add(sum, term, w);
    const BigFloat m = abs_hi(term);
    if (small_enough(m, w)) {
      i_widen(sum, m, w);
      return sum;
    }
  }
  assert(false && "cos series failed to converge");
  return sum;
}

BfI sin_point(const BigFloat& x, int64_t w) {
  if (x.is_zero()) return i_exact(BigFloat::zero());
  const Reduced rd = trig_reduce(x, w);
  switch (rd.m4) {
    case 0: return sin_small(rd.r, w);
    case 1: return cos_small(rd.r, w);
    case 2: return i_neg(sin_small(rd.r, w));
    default: return i_neg(cos_small(rd.r, w));
  }
}

BfI cos_point(const BigFloat& x, int64_t w) {
  if (x.is_zero()) return i_exact(bf_one());
  const Reduced rd = trig_reduce(x, w);
  switch (rd.m4) {
    case 0: return cos_small(rd.r, w);
    case 1: return i_neg(sin_small(rd.r, w));
    case 2: return i_neg(cos_small(rd.r, w));
    default: return sin_small(rd.r, w);
  }
}

bool straddles_zero(const BfI& v) {
  const bool lo_nonpos = v.lo.is_zero() || v.lo.negative();
  const bool hi_nonneg = v.hi.is_zero() || !v.hi.negative();
  return lo_nonpos && hi_nonneg;
}

BfI tan_point(const BigFloat& x, int64_t w) {
  if (x.is_zero()) return i_exact(BigFloat::zero());
  const int64_t wi = w + 16;
  const Reduced rd = trig_reduce(x, wi);
  BfI s, c;
  switch (rd.m4) {
    case 0:
      s = sin_small(rd.r, wi);
      c = cos_small(rd.r, wi);
      break;
    case 1:
      s = cos_small(rd.r, wi);
      c = i_neg(sin_small(rd.r, wi));
      break;
    case 2:
      s = i_neg(sin_small(rd.r, wi));
      c = i_neg(cos_small(rd.r, wi));
      break;
    default:
      s = i_neg(cos_small(rd.r, wi));
      c = sin_small(rd.r, wi);
      break;
  }
  if (straddles_zero(c)) {
    // Cannot separate the cosine from zero at this precision; report the
    // trivially valid bracket and let the caller escalate.
    return {BigFloat::inf(true), BigFloat::inf(false)};
  }
  return i_div(s, c, w);
}

BfI atan_point(const BigFloat& x, int64_t w) {
  if (x.is_zero()) return i_exact(BigFloat::zero());
  assert(x.is_finite());
  if (x.negative()) return i_neg(atan_point(x.abs(), w));
  const int64_t wi = w + 32;
  const BigFloat one = bf_one();
  const bool invert = x.top_exp() >= 1;  // |x| >= 1
  BfI g = invert ? i_div(i_exact(one), i_exact(x), wi) : i_exact(x);
  int halvings = 0;
  while (true) {
    const BigFloat m = abs_hi(g);
    if (m.is_zero() || m.top_exp() <= -3) break;  // |g| < 1/8
    // atan(g) = 2*atan(g / (1 + sqrt(1 + g^2)))
    const BfI root = i_sqrt(i_add(i_exact(one), i_mul(g, g, wi), wi), wi);
    g = i_div(g, i_add(i_exact(one), root, wi), wi);
    ++halvings;
    assert(halvings <= 8);
  }
  const BfI g2 = i_mul(g, g, wi);
  BfI pow = g;
  BfI sum = g;
  for (int64_t j = 1; j <= 1200; ++j) {
    pow = i_neg(i_mul(pow, g2, wi));
    const BfI contrib = i_div_u(pow, 2 * j + 1, wi);
    sum = i_add(sum, contrib, wi);
    const BigFloat m = abs_hi(contrib);
    if (small_enough(m, wi)) {
      i_widen(sum, m, wi);
      break;
    }
    assert(j < 1200 && "atan series failed to converge");
  }
  BfI res = i_scalb(sum, halvings);
  if (invert) {
    const BfI ph = i_scalb(const_at(consts().pi, wi), -1);
    res = i_sub(ph, res, wi);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Point certification: evaluate with doubling precision until both Binary64
// neighbours of the value are pinned.

struct PtCert {
  double rd = 0.0;
  double ru = 0.0;
  bool cert = false;
  int64_t q = 0;
};

PtCert from_exact(const BigFloat& v) {
  return {v.to_double(Rnd::down), v.to_double(Rnd::up), true, 0};
}

template <typename F>
PtCert certify_loop(F&& eval) {
  BfI last;
  for (int64_t q = kQFirst;; q *= 2) {
    if (q > kQCap) {
      return {last.lo.to_double(Rnd::down), last.hi.to_double(Rnd::up), false,
              kQCap};
    }
    const BfI e = eval(q + 64);
    last = e;
    const double d1 = e.lo.to_double(Rnd::down);
    const double d2 = e.hi.to_double(Rnd::down);
    const double u1 = e.lo.to_double(Rnd::up);
    const double u2 = e.hi.to_double(Rnd::up);
    if (d1 == d2 && u1 == u2) return {d1, u1, true, q};
  }
}

bool is_pow2(const BigFloat& v) {
  return v.is_finite() && !v.is_zero() && !v.negative() &&
         v.mant().bit_length() == 1;
}

// x finite in the function's domain.
PtCert certify_point(Op f, double x) {
  assert(std::isfinite(x));
  const BigFloat bx = bfd(x);
  switch (f) {
    case Op::exp:
      if (x == 0.0) return from_exact(bf_one());
      if (x >= 710.0) return {kMaxD, kInf, true, 0};
      if (x <= -745.0) return {0.0, kDenormMin, true, 0};
      return certify_loop([&](int64_t w) { return exp_point(bx, w); });
    case Op::log:
      assert(x > 0.0);
      if (x == 1.0) return from_exact(BigFloat::zero());
      return certify_loop([&](int64_t w) { return log_point(bx, w); });
    case Op::log2:
      assert(x > 0.0);
      if (is_pow2(bx)) return from_exact(BigFloat::from_i64(bx.exp()));
      return certify_loop([&](int64_t w) {
        return i_div(log_point(bx, w + 16), const_at(consts().ln2, w + 16), w);
      });
    case Op::log10: {
      assert(x > 0.0);
      double p10 = 1.0;
      for (int k = 0; k <= 22; ++k) {
        if (x == p10) return from_exact(BigFloat::from_i64(k));
        p10 *= 10.0;
      }
      return certify_loop([&](int64_t w) {
        return i_div(log_point(bx, w + 16), const_at(consts().ln10, w + 16),
                     w);
      });
    }
    case Op::sin:
      if (x == 0.0) return from_exact(BigFloat::zero());
      return certify_loop([&](int64_t w) { return sin_point(bx, w); });
    case Op::cos:
      if (x == 0.0) return from_exact(bf_one());
      return certify_loop([&](int64_t w) { return cos_point(bx, w); });
    case Op::tan:
      if (x == 0.0) return from_exact(BigFloat::zero());
      return certify_loop([&](int64_t w) { return tan_point(bx, w); });
    case Op::atan:
      if (x == 0.0) return from_exact(BigFloat::zero());
      return certify_loop([&](int64_t w) { return atan_point(bx, w); });
    default:
      assert(false && "not a pointwise elementary op");
      return {};
  }
}

BigFloat pow_exact(BigFloat base, uint64_t n) {
  BigFloat acc = bf_one();
  while (n != 0) {
    if (n & 1) acc = mul_exact(acc, base);
    n >>= 1;
    if (n != 0) base = mul_exact(base, base);
  }
  return acc;
}

// x finite > 0, y finite.
PtCert certify_pow_corner(double x, double y) {
  assert(std::isfinite(x) && x > 0.0 && std::isfinite(y));
  if (x == 1.0 || y == 0.0) return from_exact(bf_one());
  if (y == 1.0) return from_exact(bfd(x));
  const BigFloat bx = bfd(x);
  const BigFloat by = bfd(y);

  if (is_pow2(bx)) {
    // x = 2^e: the result is exactly 2^(e*y) whenever e*y is an integer.
    const BigFloat p = mul_exact(BigFloat::from_i64(bx.exp()), by);
    if (p.is_integer() && (p.is_zero() || p.top_exp() <= 40)) {
      return from_exact(
          BigFloat::from_parts(false, BigUint::from_u64(1), to_i64(p)));
    }
  }

  if (by.is_integer() && std::fabs(y) <= 1024.0) {
    const int64_t n = static_cast<int64_t>(y);
    const BigFloat pw = pow_exact(bx, static_cast<uint64_t>(std::llabs(n)));
    if (n >= 0) return from_exact(pw);
    const BigFloat one = bf_one();
    return certify_loop([&](int64_t w) {
      return BfI{div(one, pw, w, Rnd::down), div(one, pw, w, Rnd::up)};
    });
  }

  if (2.0 * y == std::floor(2.0 * y) && std::fabs(y) <= 1024.0) {
    // Half-integer: x^(n + 1/2) = x^n * sqrt(x), exact when x is a square.
    const int64_t n = static_cast<int64_t>(std::floor(y));
    const BigFloat pw =
        pow_exact(bx, static_cast<uint64_t>(n >= 0 ? n : -n));
    return certify_loop([&](int64_t w) {
      const BigFloat s_lo = sqrt(bx, w + 8, Rnd::down);
      const BigFloat s_hi = sqrt(bx, w + 8, Rnd::up);
      if (n >= 0) {
        return BfI{mul(pw, s_lo, w, Rnd::down), mul(pw, s_hi, w, Rnd::up)};
      }
      return BfI{div(s_lo, pw, w, Rnd::down), div(s_hi, pw, w, Rnd::up)};
    });
  }

  // General case: exp(y * log x), with the exponent classified first so the
  // saturation zones never reach the series.
  {
    const int64_t w0 = 160;
    const BfI t0 = i_mul(i_exact(by), log_point(bx, w0), w0);
    if (BigFloat::compare(t0.lo, BigFloat::from_i64(710)) >= 0) {
      return {kMaxD, kInf, true, 0};
    }
    if (BigFloat::compare(t0.hi, BigFloat::from_i64(-745)) <= 0) {
      return {0.0, kDenormMin, true, 0};
    }
  }
  return certify_loop([&](int64_t w) {
    const int64_t wi = w + 32;
    const BfI t = i_mul(i_exact(by), log_point(bx, wi), wi);
    return BfI{exp_point(t.lo, w).lo, exp_point(t.hi, w).hi};
  });
}

// ---------------------------------------------------------------------------
// Interval range assembly.

double norm0(double d) { return d == 0.0 ? 0.0 : d; }

Enclosure53 make_enc(double lo, double hi, bool cert, int64_t q) {
  Enclosure53 e;
  e.lo = norm0(lo);
  e.hi = norm0(hi);
  e.certified = cert;
  e.q_final = q;
  return e;
}

Enclosure53 make_empty() {
  Enclosure53 e;
  e.lo = kQNan;
  e.hi = kQNan;
  e.empty = true;
  e.certified = true;
  return e;
}

void check_iv(const Iv& v) {
  assert(!std::isnan(v.lo) && !std::isnan(v.hi));
  assert(v.lo <= v.hi && v.lo != kInf && v.hi != -kInf);
  (void)v;
}

Enclosure53 arith_add(const Iv& a, const Iv& b) {
  const BigFloat lo = add_exact(bfd(a.lo), bfd(b.lo));
  const BigFloat hi = add_exact(bfd(a.hi), bfd(b.hi));
  assert(!lo.is_nan() && !hi.is_nan());
  return make_enc(lo.to_double(Rnd::down), hi.to_double(Rnd::up), true, 0);
}

Enclosure53 arith_sub(const Iv& a, const Iv& b) {
  const BigFloat lo = add_exact(bfd(a.lo), bfd(b.hi).negated());
  const BigFloat hi = add_exact(bfd(a.hi), bfd(b.lo).negated());
  assert(!lo.is_nan() && !hi.is_nan());
  return make_enc(lo.to_double(Rnd::down), hi.to_double(Rnd::up), true, 0);
}

// Exact product of two endpoints under the range convention that a zero
// endpoint annihilates an infinite one (the zero is attained, so the product
// contributes 0 to the range).
BigFloat mul_cand(double x, double y) {
  if (x == 0.0 || y == 0.0) return BigFloat::zero();
  return mul_exact(bfd(x), bfd(y));
}

void product_bounds(const Iv& a, const Iv& b, BigFloat& pmin, BigFloat& pmax) {
  const double xs[2] = {a.lo, a.hi};
  const double ys[2] = {b.lo, b.hi};
  bool first = true;
  for (double x : xs) {
    for (double y : ys) {
      BigFloat c = mul_cand(x, y);
      assert(!c.is_nan());
      if (first) {
        pmin = c;
        pmax = std::move(c);
        first = false;
      } else {
        if (BigFloat::compare(c, pmin) < 0) pmin = c;
        if (BigFloat::compare(c, pmax) > 0) pmax = std::move(c);
      }
    }
  }
}

Enclosure53 arith_mul(const Iv& a, const Iv& b) {
  BigFloat pmin, pmax;
  product_bounds(a, b, pmin, pmax);
  return make_enc(pmin.to_double(Rnd::down), pmax.to_double(Rnd::up), true, 0);
}

Enclosure53 arith_div(const Iv& x, const Iv& y) {
  const double a = x.lo, b = x.hi, c = y.lo, d = y.hi;
  if (c == 0.0 && d == 0.0) return make_empty();
  if (c < 0.0 && d > 0.0) {
    if (a == 0.0 && b == 0.0) return make_enc(0.0, 0.0, true, 0);
    return make_enc(-kInf, kInf, true, 0);
  }
  // Divisor is sign-definite, possibly with a zero endpoint; a zero endpoint
  // contributes the one-sided limit of v/t as t approaches 0 from inside.
  double lo = kInf, hi = -kInf;
  const auto limit0 = [&](double v, bool from_pos) {
    if (v == 0.0) return 0.0;
    const double s = (v > 0.0) == from_pos ? kInf : -kInf;
    return s;
  };
  const auto take = [&](double dn, double up) {
    lo = std::min(lo, dn);
    hi = std::max(hi, up);
  };
  for (double v : {a, b}) {
    for (double t : {c, d}) {
      if (t == 0.0) {
        const double s = limit0(v, c == 0.0);
        take(s, s);
        continue;
      }
      if (std::isinf(v) && std::isinf(t)) continue;  // dominated
      const BigFloat bv = bfd(v), bt = bfd(t);
      take(div(bv, bt, 120, Rnd::down).to_double(Rnd::down),
           div(bv, bt, 120, Rnd::up).to_double(Rnd::up));
    }
  }
  assert(lo <= hi);
  return make_enc(lo, hi, true, 0);
}

Enclosure53 arith_sqr(const Iv& x) {
  const bool has_zero = x.lo <= 0.0 && x.hi >= 0.0;
  const double mag = std::max(std::fabs(x.lo), std::fabs(x.hi));
  double lo = 0.0;
  if (!has_zero) {
    const double mig = std::min(std::fabs(x.lo), std::fabs(x.hi));
    lo = mul_exact(bfd(mig), bfd(mig)).to_double(Rnd::down);
  }
  const double hi = mul_exact(bfd(mag), bfd(mag)).to_double(Rnd::up);
  return make_enc(lo, hi, true, 0);
}

Enclosure53 arith_sqrt(const Iv& x) {
  if (x.hi < 0.0) return make_empty();
  const double a = std::max(x.lo, 0.0);
  const double lo = sqrt(bfd(a), 120, Rnd::down).to_double(Rnd::down);
  const double hi = sqrt(bfd(x.hi), 120, Rnd::up).to_double(Rnd::up);
  return make_enc(lo, hi, true, 0);
}

Enclosure53 arith_fma(const Iv& x, const Iv& y, const Iv& z) {
  BigFloat pmin, pmax;
  product_bounds(x, y, pmin, pmax);
  const BigFloat lo = add_exact(pmin, bfd(z.lo));
  const BigFloat hi = add_exact(pmax, bfd(z.hi));
  assert(!lo.is_nan() && !hi.is_nan());
  return make_enc(lo.to_double(Rnd::down), hi.to_double(Rnd::up), true, 0);
}

struct SideAcc {
  double lo = kInf;
  double hi = -kInf;
  bool cert = true;
  int64_t q = 0;

  void low(double v, bool c, int64_t qq) {
    lo = std::min(lo, v);
    cert &= c;
    q = std::max(q, qq);
  }
  void high(double v, bool c, int64_t qq) {
    hi = std::max(hi, v);
    cert &= c;
    q = std::max(q, qq);
  }
  Enclosure53 done() const { return make_enc(lo, hi, cert, q); }
};

// Monotone increasing elementary function over [a, b] with limit values for
// infinite endpoints supplied by the caller.
Enclosure53 mono_range(Op f, const Iv& x, double lo_limit, double hi_limit) {
  SideAcc acc;
  if (x.lo == -kInf) {
    acc.low(lo_limit, true, 0);
  } else {
    const PtCert c = certify_point(f, x.lo);
    acc.low(c.rd, c.cert, c.q);
  }
  if (x.hi == kInf) {
    acc.high(hi_limit, true, 0);
  } else {
    const PtCert c = certify_point(f, x.hi);
    acc.high(c.ru, c.cert, c.q);
  }
  return acc.done();
}

double half_pi_double(bool upper) {
  const BfI& p = consts().pi;
  const Rnd r = upper ? Rnd::up : Rnd::down;
  const double d1 = p.lo.scalb(-1).to_double(r);
  const double d2 = p.hi.scalb(-1).to_double(r);
  assert(d1 == d2);
  (void)d2;
  return d1;
}

Enclosure53 elem_log_family(Op f, const Iv& x) {
  if (x.hi <= 0.0) return make_empty();
  const double a = std::max(x.lo, 0.0);
  SideAcc acc;
  if (a == 0.0) {
    acc.low(-kInf, true, 0);
  } else {
    const PtCert c = certify_point(f, a);
    acc.low(c.rd, c.cert, c.q);
  }
  if (x.hi == kInf) {
    acc.high(kInf, true, 0);
  } else {
    const PtCert c = certify_point(f, x.hi);
    acc.high(c.ru, c.cert, c.q);
  }
  return acc.done();
}

Enclosure53 elem_sin_cos(Op f, const Iv& x) {
  if (!std::isfinite(x.lo) || !std::isfinite(x.hi)) {
    return make_enc(-1.0, 1.0, true, 0);
  }
  const TrigPoints tp = trig_points(x.lo, x.hi);
  const bool has_max = f == Op::sin ? tp.sin_max : tp.cos_max;
  const bool has_min = f == Op::sin ? tp.sin_min : tp.cos_min;
  SideAcc acc;
  if (has_max && has_min) return make_enc(-1.0, 1.0, true, 0);
  const PtCert ca = certify_point(f, x.lo);
  const PtCert cb = certify_point(f, x.hi);
  if (has_min) {
    acc.low(-1.0, true, 0);
  } else {
    acc.low(ca.rd, ca.cert, ca.q);
    acc.low(cb.rd, cb.cert, cb.q);
  }
  if (has_max) {
    acc.high(1.0, true, 0);
  } else {
    acc.high(ca.ru, ca.cert, ca.q);
    acc.high(cb.ru, cb.cert, cb.q);
  }
  return acc.done();
}

Enclosure53 elem_tan(const Iv& x) {
  if (!std::isfinite(x.lo) || !std::isfinite(x.hi)) {
    return make_enc(-kInf, kInf, true, 0);
  }
  const TrigPoints tp = trig_points(x.lo, x.hi);
  if (tp.pole) return make_enc(-kInf, kInf, true, 0);
  // No pole inside: tan is increasing across the whole span.
  SideAcc acc;
  const PtCert ca = certify_point(Op::tan, x.lo);
  const PtCert cb = certify_point(Op::tan, x.hi);
  acc.low(ca.rd, ca.cert, ca.q);
  acc.high(cb.ru, cb.cert, cb.q);
  return acc.done();
}

Enclosure53 elem_pow(const Iv& xi, const Iv& yi) {
  if (xi.hi < 0.0) return make_empty();
  const double xlo = std::max(xi.lo, 0.0);
  const double xhi = xi.hi;
  if (xhi == 0.0) {
    // Only x = 0 remains, defined solely for y > 0, where the value is 0.
    if (yi.hi > 0.0) return make_enc(0.0, 0.0, true, 0);
    return make_empty();
  }
  SideAcc acc;
  const auto take = [&](const PtCert& c) {
    acc.low(c.rd, c.cert, c.q);
    acc.high(c.ru, c.cert, c.q);
  };
  const auto exact1 = [&]() { take(PtCert{1.0, 1.0, true, 0}); };
  const auto corner = [&](double cx, double cy) {
    if (cx == 0.0) {
      if (cy > 0.0) take(PtCert{0.0, 0.0, true, 0});
      else if (cy < 0.0) take(PtCert{kInf, kInf, true, 0});
      else exact1();
      return;
    }
    if (cx == kInf) {
      if (cy > 0.0) take(PtCert{kInf, kInf, true, 0});
      else if (cy < 0.0) take(PtCert{0.0, 0.0, true, 0});
      else exact1();
      return;
    }
    if (cy == kInf || cy == -kInf) {
      const bool big = (cx > 1.0) == (cy > 0.0);
      if (cx == 1.0) exact1();
      else take(big ? PtCert{kInf, kInf, true, 0} : PtCert{0.0, 0.0, true, 0});
      return;
    }
    take(certify_pow_corner(cx, cy));
  };
  corner(xlo, yi.lo);
  corner(xlo, yi.hi);
  corner(xhi, yi.lo);
  corner(xhi, yi.hi);
  // Interior critical points of x^y all carry the value 1 (x = 1 or y = 0).
  if ((xlo <= 1.0 && xhi >= 1.0) || (yi.lo <= 0.0 && yi.hi >= 0.0)) exact1();
  return acc.done();
}

}  // namespace

Enclosure53 tightest_eval(Op op, std::span<const Iv> args) {
  assert(args.size() == static_cast<std::size_t>(op_arity(op)));
  for (const Iv& v : args) check_iv(v);
  switch (op) {
    case Op::neg:
      return make_enc(-args[0].hi, -args[0].lo, true, 0);
    case Op::add:
      return arith_add(args[0], args[1]);
    case Op::sub:
      return arith_sub(args[0], args[1]);
    case Op::mul:
      return arith_mul(args[0], args[1]);
    case Op::div:
      return arith_div(args[0], args[1]);
    case Op::recip:
      return arith_div(Iv{1.0, 1.0}, args[0]);
    case Op::sqr:
      return arith_sqr(args[0]);
    case Op::sqrt:
      return arith_sqrt(args[0]);
    case Op::fma:
      return arith_fma(args[0], args[1], args[2]);
    case Op::exp:
      return mono_range(Op::exp, args[0], 0.0, kInf);
    case Op::log:
    case Op::log2:
    case Op::log10:
      return elem_log_family(op, args[0]);
    case Op::atan:
      return mono_range(Op::atan, args[0], -half_pi_double(true),
                        half_pi_double(true));
    case Op::sin:
    case Op::cos:
      return elem_sin_cos(op, args[0]);
    case Op::tan:
      return elem_tan(args[0]);
    case Op::pow:
      return elem_pow(args[0], args[1]);
    default:
      assert(false && "op has no numeric range oracle");
      return make_empty();
  }
}

bf::BigFloat bf_elem(Op f, bf::Rnd dir, int64_t q, const bf::BigFloat& x) {
  assert(q >= 2 && dir != Rnd::nearest);
  if (x.is_nan() || x.is_inf()) return BigFloat::nan();
  const int64_t w = q + 16;
  const auto side = [&](const BfI& e) {
    return dir == Rnd::down ? e.lo.rounded(q, Rnd::down)
                            : e.hi.rounded(q, Rnd::up);
  };
  switch (f) {
    case Op::exp: {
      if (x.is_zero()) return bf_one();
      if (BigFloat::compare(x, BigFloat::from_i64(710)) >= 0) {
        return dir == Rnd::down
                   ? BigFloat::from_parts(false, BigUint::from_u64(1), 1024)
                   : BigFloat::inf();
      }
      if (BigFloat::compare(x, BigFloat::from_i64(-745)) <= 0) {
        return dir == Rnd::down
                   ? BigFloat::zero()
                   : BigFloat::from_parts(false, BigUint::from_u64(1), -1074);
      }
      return side(exp_point(x, w));
    }
    case Op::log:
      if (x.is_zero() || x.negative()) return BigFloat::nan();
      return side(log_point(x, w));
    case Op::log2:
      if (x.is_zero() || x.negative()) return BigFloat::nan();
      return side(i_div(log_point(x, w + 16), const_at(consts().ln2, w + 16),
                        w));
    case Op::log10:
      if (x.is_zero() || x.negative()) return BigFloat::nan();
      return side(i_div(log_point(x, w + 16), const_at(consts().ln10, w + 16),
                        w));
    case Op::sin:
      return side(sin_point(x, w));
    case Op::cos:
      return side(cos_point(x, w));
    case Op::tan:
      return side(tan_point(x, w));
    case Op::atan:
      return side(atan_point(x, w));
    default:
      assert(false && "not an elementary op");
      return BigFloat::nan();
  }
}

bf::BigFloat bf_pow(bf::Rnd dir, int64_t q, const bf::BigFloat& x,
                    const bf::BigFloat& y) {
  assert(q >= 2 && dir != Rnd::nearest);
  if (!x.is_finite() || !y.is_finite()) return BigFloat::nan();
  if (x.is_zero() || x.negative()) return BigFloat::nan();
  if (y.is_zero()) return bf_one();
  const int64_t w = q + 16;
  const int64_t wi = w + 32;
  const BfI t = i_mul(i_exact(y), log_point(x, wi), wi);
  if (BigFloat::compare(t.lo, BigFloat::from_i64(710)) >= 0) {
    return dir == Rnd::down
               ? BigFloat::from_parts(false, BigUint::from_u64(1), 1024)
               : BigFloat::inf();
  }
  if (BigFloat::compare(t.hi, BigFloat::from_i64(-745)) <= 0) {
    return dir == Rnd::down
               ? BigFloat::zero()
               : BigFloat::from_parts(false, BigUint::from_u64(1), -1074);
  }
  const BfI e{exp_point(t.lo, w).lo, exp_point(t.hi, w).hi};
  return dir == Rnd::down ? e.lo.rounded(q, Rnd::down)
                          : e.hi.rounded(q, Rnd::up);
}

TrigPoints trig_points(double lo, double hi) {
  TrigPoints tp;
  assert(lo <= hi);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    tp.sin_max = tp.sin_min = tp.cos_max = tp.cos_min = tp.pole = true;
    return tp;
  }
  const int64_t w = 2400;
  const BfI ph = i_scalb(const_at(consts().pi, w), -1);
  const auto bound_int = [&](double v, bool want_ceil) {
    const BfI t = i_div(i_exact(bfd(v)), ph, w);
    const BigFloat c1 =
        want_ceil ? t.lo.ceil_to_integer() : t.lo.floor_to_integer();
    const BigFloat c2 =
        want_ceil ? t.hi.ceil_to_integer() : t.hi.floor_to_integer();
    // No Binary64 sits close enough to a nonzero multiple of pi/2 to leave
    // this ambiguous at 2400 bits.
    assert(BigFloat::compare(c1, c2) == 0);
    (void)c2;
    return c1;
  };
  const BigFloat kmin = bound_int(lo, true);
  const BigFloat kmax = bound_int(hi, false);
  if (BigFloat::compare(kmin, kmax) > 0) return tp;
  const BigFloat count = add_exact(kmax, kmin.negated());
  if (BigFloat::compare(count, BigFloat::from_i64(3)) >= 0) {
    tp.sin_max = tp.sin_min = tp.cos_max = tp.cos_min = tp.pole = true;
    return tp;
  }
  const BigFloat one = bf_one();
  for (BigFloat k = kmin; BigFloat::compare(k, kmax) <= 0;
       k = add_exact(k, one)) {
    switch (mod4_of(k)) {
      case 0: tp.cos_max = true; break;
      case 1: tp.sin_max = true; tp.pole = true; break;
      case 2: tp.cos_min = true; break;
      default: tp.sin_min = true; tp.pole = true; break;
    }
  }
  return tp;
}

double pi_half_multiple_rn(int64_t k) {
  if (k == 0) return 0.0;
  const int64_t w = 400;
  const BfI ph = i_scalb(const_at(consts().pi, w), -1);
  const BfI m = i_mul(i_exact(BigFloat::from_i64(k)), ph, w);
  const double d1 = m.lo.to_double(Rnd::nearest);
  const double d2 = m.hi.to_double(Rnd::nearest);
  assert(d1 == d2);
  (void)d2;
  return d1;
}

const BfI& pi_bounds() { return consts().pi; }
const BfI& ln2_bounds() { return consts().ln2; }
const BfI& ln10_bounds() { return consts().ln10; }

}  // namespace itlconform::oracle
