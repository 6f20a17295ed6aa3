#include "itlconform/fpkernel.hpp"

#include <bit>
#include <cassert>
#include <cmath>

namespace itlconform::fpk {

namespace {

constexpr uint64_t kSignMask = 0x8000000000000000ull;
constexpr uint64_t kFracMask = 0x000fffffffffffffull;

// Quantum exponent: x == mantissa * 2^quantum_exp with integer mantissa.
int quantum_exp(double x) {
  const uint64_t bits = std::bit_cast<uint64_t>(x);
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  return biased == 0 ? -1074 : biased - 1075;
}

struct Decomp {
  uint64_t mant;  // integer significand, < 2^53
  int exp;        // quantum exponent
  bool neg;
};

Decomp decompose(double x) {
  const uint64_t bits = std::bit_cast<uint64_t>(x);
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  Decomp d;
  d.neg = (bits & kSignMask) != 0;
  if (biased == 0) {
    d.mant = bits & kFracMask;
    d.exp = -1074;
  } else {
    d.mant = (bits & kFracMask) | (1ull << 52);
    d.exp = biased - 1075;
  }
  return d;
}

// Fixed-width two's-complement accumulator over the quantum 2^kBase. Wide
// enough to hold sums of a few doubles and double products exactly: the
// smallest nonzero product of two doubles is 2^-2148 and the largest finite
// one is below 2^2048, so bit positions span [12, 4208] inside the window.
class Acc {
 public:
  static constexpr int kWords = 70;   // 4480 bits
  static constexpr int kBase = -2160; // weight of bit 0

  void add(double d) { accumulate(decompose(d), /*negate=*/false); }
  void sub(double d) { accumulate(decompose(d), /*negate=*/true); }

  void add_product(double a, double b) { accumulate_product(a, b, false); }
  void sub_product(double a, double b) { accumulate_product(a, b, true); }

  int sign() const {
    if (static_cast<int64_t>(w_[kWords - 1]) < 0) return -1;
    for (int i = kWords - 1; i >= 0; --i)
      if (w_[i] != 0) return 1;
    return 0;
  }

  // Round-to-nearest (ties to even) conversion of value * 2^scale.
  double to_double_rn(int scale) const;

 private:
  uint64_t w_[kWords] = {};

  void accumulate(const Decomp& d, bool negate) {
    if (d.mant == 0) return;
    add_shifted(static_cast<unsigned __int128>(d.mant), d.exp - kBase,
                d.neg != negate);
  }

  void accumulate_product(double a, double b, bool negate) {
    const Decomp da = decompose(a);
    const Decomp db = decompose(b);
    if (da.mant == 0 || db.mant == 0) return;
    const unsigned __int128 m =
        static_cast<unsigned __int128>(da.mant) * db.mant;
    add_shifted(m, da.exp + db.exp - kBase, (da.neg != db.neg) != negate);
  }

  void add_shifted(unsigned __int128 m, int bitpos, bool negative) {
    assert(bitpos >= 0 && bitpos + 128 < kWords * 64);
    const int word = bitpos / 64;
    const int off = bitpos % 64;
    const uint64_t mlo = static_cast<uint64_t>(m);
    const uint64_t mhi = static_cast<uint64_t>(m >> 64);
    uint64_t part[3];
    part[0] = mlo << off;
    part[1] = (off ? (mlo >> (64 - off)) : 0) | (mhi << off);
    part[2] = off ? (mhi >> (64 - off)) : 0;
    if (!negative) {
      unsigned __int128 carry = 0;
      for (int i = 0; i < 3; ++i) {
        carry += w_[word + i];
        carry += part[i];
        w_[word + i] = static_cast<uint64_t>(carry);
        carry >>= 64;
      }
      for (int i = word + 3; carry && i < kWords; ++i) {
        carry += w_[i];
        w_[i] = static_cast<uint64_t>(carry);
        carry >>= 64;
      }
    } else {
      unsigned __int128 borrow = 0;
      for (int i = 0; i < 3; ++i) {
        unsigned __int128 cur = static_cast<unsigned __int128>(w_[word + i]);
        cur -= part[i];
        cur -= borrow;
        w_[word + i] = static_cast<uint64_t>(cur);
        borrow = (cur >> 64) ? 1 : 0;
      }
      for (int i = word + 3; borrow && i < kWords; ++i) {
        unsigned __int128 cur = static_cast<unsigned __int128>(w_[i]);
        cur -= borrow;
        w_[i] = static_cast<uint64_t>(cur);
        borrow = (cur >> 64) ? 1 : 0;
      }
    }
  }
};

double Acc::to_double_rn(int scale) const {
  const int s = sign();
  if (s == 0) return 0.0;
  uint64_t mag[kWords];
  if (s > 0) {
    for (int i = 0; i < kWords; ++i) mag[i] = w_[i];
  } else {
    unsigned __int128 carry = 1;
    for (int i = 0; i < kWords; ++i) {
      carry += static_cast<uint64_t>(~w_[i]);
      mag[i] = static_cast<uint64_t>(carry);
      carry >>= 64;
    }
  }
  int top = -1;
  for (int i = kWords - 1; i >= 0; --i) {
    if (mag[i] != 0) {
      top = i * 64 + 63 - std::countl_zero(mag[i]);
      break;
    }
  }
  assert(top >= 0);
  const auto bit_at = [&](int i) -> int {
    if (i < 0 || i > top) return 0;
    return static_cast<int>((mag[i / 64] >> (i % 64)) & 1u);
  };
  const int h = top + 1 + kBase + scale;  // |value| in [2^(h-1), 2^h)
  if (h > 1024) return s > 0 ? HUGE_VAL : -HUGE_VAL;
  int t = std::max(h - 53, -1074);        // weight of the result's quantum
  const int cut = t - (kBase + scale);    // first kept bit index
  uint64_t kept = 0;
  for (int i = top; i >= cut && i > top - 64; --i)
    kept = (kept << 1) | static_cast<uint64_t>(bit_at(i));
  const int guard = bit_at(cut - 1);
  bool sticky = false;
  const int whole = (cut - 1) / 64;
  for (int i = 0; i < whole && !sticky; ++i) sticky = mag[i] != 0;
  for (int i = std::max(0, whole * 64); i < cut - 1 && !sticky; ++i)
    sticky = bit_at(i) != 0;
  if (guard && (sticky || (kept & 1))) ++kept;
  if (kept == (1ull << 53)) {
    kept >>= 1;
    ++t;
  }
  if (kept != 0 && 64 - std::countl_zero(kept) + t > 1024)
    return s > 0 ? HUGE_VAL : -HUGE_VAL;
  const double r = std::ldexp(static_cast<double>(kept), t);
  return s > 0 ? r : -r;
}

int sign3(double x) { return (x > 0.0) - (x < 0.0); }

double step_dir(double r, int sign_true_minus_r, Dir dir) {
  if (sign_true_minus_r == 0) return r;
  if (dir == Dir::down) return sign_true_minus_r < 0 ? next_down(r) : r;
  return sign_true_minus_r > 0 ? next_up(r) : r;
}

double overflow_sat(double inf_signed, Dir dir) {
  if (inf_signed > 0) return dir == Dir::up ? HUGE_VAL : kMaxReal;
  return dir == Dir::down ? -HUGE_VAL : -kMaxReal;
}

// RN gave an exact zero but the true value is a tiny nonzero of the given
// sign: the directed results straddle zero.
double underflow_zero(int true_sign, Dir dir) {
  assert(true_sign != 0);
  if (true_sign > 0) return dir == Dir::up ? kMinSubnormal : 0.0;
  return dir == Dir::down ? -kMinSubnormal : -0.0;
}

int sign_ab_minus_r_minus_e(double a, double b, double r, double e) {
  Acc acc;
  acc.add_product(a, b);
  acc.sub(r);
  acc.sub(e);
  return acc.sign();
}

}  // namespace

FpClass classify(double x) {
  switch (std::fpclassify(x)) {
    case FP_ZERO: return FpClass::zero;
    case FP_SUBNORMAL: return FpClass::subnormal;
    case FP_NORMAL: return FpClass::normal;
    case FP_INFINITE: return FpClass::infinite;
    default: return FpClass::nan;
  }
}

double next_up(double x) {
  if (std::isnan(x)) return x;
  if (x == 0.0) return kMinSubnormal;
  uint64_t u = std::bit_cast<uint64_t>(x);
  if (u & kSignMask) {
    --u;  // toward zero; -kMinSubnormal steps to -0.0, -inf to -kMaxReal
  } else {
    if (x == HUGE_VAL) return x;
    ++u;  // away from zero; kMaxReal steps to +inf
  }
  return std::bit_cast<double>(u);
}

double next_down(double x) { return -next_up(-x); }

EftPair two_sum(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return {s, std::nan("")};
  const double a1 = s - b;
  const double b1 = s - a1;
  const double da = a - a1;
  const double db = b - b1;
  return {s, da + db};
}

EftProd two_prod(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return {p, std::nan(""), false};
  if (a == 0.0 || b == 0.0) return {p, 0.0, true};
  if (quantum_exp(a) + quantum_exp(b) >= -1074) {
    // The exact residual lies on a representable quantum grid, so the fma
    // rounds nothing away.
    return {p, std::fma(a, b, -p), true};
  }
  const double e = std::fma(a, b, -p);
  const int s = detail::sign_ab_minus_r(a, b, p);
  if (s == 0) return {p, 0.0, true};
  if (sign3(e) == s && sign_ab_minus_r_minus_e(a, b, p, e) == 0)
    return {p, e, true};
  const double lo = (sign3(e) == s && e != 0.0)
                        ? e
                        : std::copysign(kMinSubnormal, static_cast<double>(s));
  return {p, lo, false};
}

double dir_add(Dir dir, double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::nan("");
  if (std::isinf(a) || std::isinf(b)) return a + b;
  const double s = a + b;
  if (std::isinf(s)) return overflow_sat(s, dir);
  if (s == 0.0) {
    // Exact: either both inputs are zeros (keep the IEEE nearest sign) or a
    // nonzero cancellation, which is +0.0 by convention.
    return (a == 0.0 && b == 0.0) ? s : 0.0;
  }
  const EftPair p = two_sum(a, b);
  return step_dir(s, sign3(p.lo), dir);
}

double dir_sub(Dir dir, double a, double b) { return dir_add(dir, a, -b); }

double dir_mul(Dir dir, double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::nan("");
  if (std::isinf(a) || std::isinf(b)) return a * b;
  const double p = a * b;
  if (std::isinf(p)) return overflow_sat(p, dir);
  if (a == 0.0 || b == 0.0) return p;
  if (quantum_exp(a) + quantum_exp(b) >= -1074)
    return step_dir(p, sign3(std::fma(a, b, -p)), dir);
  const int s = detail::sign_ab_minus_r(a, b, p);
  if (p == 0.0) return underflow_zero(sign3(a) * sign3(b), dir);
  return step_dir(p, s, dir);
}

double dir_div(Dir dir, double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::nan("");
  if (std::isinf(a) || std::isinf(b) || a == 0.0 || b == 0.0) return a / b;
  const double r = a / b;
  if (std::isinf(r)) return overflow_sat(r, dir);
  if (r == 0.0) return underflow_zero(sign3(a) * sign3(b), dir);
  int s;
  if (quantum_exp(r) + quantum_exp(b) >= -1074) {
    s = sign3(std::fma(-r, b, a)) * sign3(b);
  } else {
    s = detail::sign_a_minus_rb(a, r, b) * sign3(b);
  }
  return step_dir(r, s, dir);
}

double dir_sqrt(Dir dir, double a) {
  if (std::isnan(a) || a < 0.0) return std::sqrt(a);
  if (a == 0.0 || std::isinf(a)) return std::sqrt(a);
  if (a >= 0x1p-960) {
    const double r = std::sqrt(a);
    // r >= 2^-480 here, so r*r - a sits on a representable quantum grid.
    const double e = std::fma(r, r, -a);
    return step_dir(r, -sign3(e), dir);
  }
  // Rescale by an even power of two to leave the subnormal range.
  const double a2 = std::ldexp(a, 1080);
  const double r2 = std::sqrt(a2);
  const double e = std::fma(r2, r2, -a2);
  return std::ldexp(step_dir(r2, -sign3(e), dir), -540);
}

double dir_fma(Dir dir, double a, double b, double c) {
  const double r = std::fma(a, b, c);
  if (std::isnan(a) || std::isnan(b) || std::isnan(c)) return std::nan("");
  if (std::isinf(a) || std::isinf(b) || std::isinf(c)) return r;
  if (std::isinf(r)) return overflow_sat(r, dir);
  const int s = detail::sign_ab_plus_c_minus_r(a, b, c, r);
  if (r == 0.0) return s == 0 ? r : underflow_zero(s, dir);
  return step_dir(r, s, dir);
}

double dir_op(DirOp op, Dir dir, double a, double b, double c) {
  switch (op) {
    case DirOp::add: return dir_add(dir, a, b);
    case DirOp::sub: return dir_sub(dir, a, b);
    case DirOp::mul: return dir_mul(dir, a, b);
    case DirOp::div: return dir_div(dir, a, b);
    case DirOp::sqrt: return dir_sqrt(dir, a);
    case DirOp::fma: return dir_fma(dir, a, b, c);
  }
  return std::nan("");
}

double midpoint_rn(double a, double b) {
  assert(std::isfinite(a) && std::isfinite(b));
  Acc acc;
  acc.add(a);
  acc.add(b);
  return acc.to_double_rn(-1);
}

namespace detail {

int sign_ab_minus_r(double a, double b, double r) {
  Acc acc;
  acc.add_product(a, b);
  acc.sub(r);
  return acc.sign();
}

int sign_a_minus_rb(double a, double r, double b) {
  Acc acc;
  acc.add(a);
  acc.sub_product(r, b);
  return acc.sign();
}

int sign_a_minus_r2(double a, double r) {
  Acc acc;
  acc.add(a);
  acc.sub_product(r, r);
  return acc.sign();
}

int sign_ab_plus_c_minus_r(double a, double b, double c, double r) {
  Acc acc;
  acc.add_product(a, b);
  acc.add(c);
  acc.sub(r);
  return acc.sign();
}

}  // namespace detail

std::string f64_to_hex(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::string out;
  if (std::signbit(x)) out += '-';
  if (x == 0.0) {
    out += "0x0p+0";
    return out;
  }
  const uint64_t bits = std::bit_cast<uint64_t>(x);
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  uint64_t frac = bits & kFracMask;
  int e;
  if (biased != 0) {
    e = biased - 1023;
  } else {
    // Renormalize subnormals so the leading digit is 1.
    const int top = 63 - std::countl_zero(frac);
    e = top - 1074;
    frac = (frac << (52 - top)) & kFracMask;
  }
  out += "0x1";
  if (frac != 0) {
    out += '.';
    char digits[13];
    for (int i = 0; i < 13; ++i)
      digits[i] = "0123456789abcdef"[(frac >> (48 - 4 * i)) & 0xf];
    int n = 13;
    while (n > 0 && digits[n - 1] == '0') --n;
    out.append(digits, digits + n);
  }
  out += 'p';
  out += e < 0 ? '-' : '+';
  out += std::to_string(e < 0 ? -e : e);
  return out;
}

HexParse hex_to_f64(std::string_view text) {
  const auto fail = [](std::size_t pos) {
    return HexParse{HexParse::Status::malformed, 0.0, pos};
  };
  const auto inexact = [](std::size_t pos) {
    return HexParse{HexParse::Status::inexact, 0.0, pos};
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i + 1 >= text.size() || text[i] != '0' ||
      (text[i + 1] != 'x' && text[i + 1] != 'X'))
    return fail(i);
  i += 2;

  const auto hexval = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };

  unsigned __int128 m = 0;
  int acc_nibbles = 0;      // significant nibbles accumulated into m
  long tail_scale = 0;      // dropped pre-point nibbles contribute 2^(4k)
  long frac_nibbles = 0;
  bool sticky = false;
  bool any_digit = false;
  bool seen_point = false;
  bool started = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (seen_point) return fail(i);
      seen_point = true;
      continue;
    }
    const int d = hexval(ch);
    if (d < 0) break;
    any_digit = true;
    if (!started && d == 0) {
      if (seen_point) frac_nibbles += 1;
      continue;
    }
    started = true;
    if (acc_nibbles < 30) {
      m = (m << 4) | static_cast<unsigned>(d);
      ++acc_nibbles;
      if (seen_point) frac_nibbles += 1;
    } else if (seen_point) {
      sticky = sticky || d != 0;
    } else {
      tail_scale += 4;
      sticky = sticky || d != 0;
    }
  }
  if (!any_digit) return fail(i);
  if (i >= text.size() || (text[i] != 'p' && text[i] != 'P')) return fail(i);
  ++i;
  bool eneg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    eneg = text[i] == '-';
    ++i;
  }
  if (i >= text.size() || text[i] < '0' || text[i] > '9') return fail(i);
  long ev = 0;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
    if (ev < (1l << 28)) ev = ev * 10 + (text[i] - '0');
  }
  if (i != text.size()) return fail(i);
  const long exp10p2 = (eneg ? -ev : ev) + tail_scale - 4 * frac_nibbles;

  if (m == 0) {
    const double z = neg ? -0.0 : 0.0;
    return {HexParse::Status::ok, z, 0};
  }
  int len = 0;
  for (unsigned __int128 t = m; t != 0; t >>= 1) ++len;
  const long h = len + exp10p2;  // value in [2^(h-1), 2^h)
  if (h > 1024) return inexact(0);
  const long t = std::max(h - 53, -1074l);
  const long cut = t - exp10p2;  // bits below this index must vanish
  if (sticky) return inexact(0);
  if (cut >= len) return inexact(0);
  uint64_t mant;
  if (cut > 0) {
    if ((m & ((static_cast<unsigned __int128>(1) << cut) - 1)) != 0)
      return inexact(0);
    mant = static_cast<uint64_t>(m >> cut);
  } else {
    mant = static_cast<uint64_t>(m) << (-cut);
  }
  const double v = std::ldexp(static_cast<double>(mant), static_cast<int>(t));
  return {HexParse::Status::ok, neg ? -v : v, 0};
}

}  // namespace itlconform::fpk
