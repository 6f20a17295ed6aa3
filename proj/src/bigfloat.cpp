#include "itlconform/bigfloat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>

namespace itlconform::bf {

namespace {

using u128 = unsigned __int128;

constexpr std::size_t kMaxAlignBits = std::size_t{1} << 24;

}  // namespace

// --------------------------------------------------------------------------
// BigUint

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::from_u64(uint64_t v) {
  BigUint r;
  if (v != 0) r.limbs_.push_back(v);
  return r;
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  return 64 * limbs_.size() - std::countl_zero(limbs_.back());
}

bool BigUint::get_bit(std::size_t i) const {
  const std::size_t limb = i / 64;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 64)) & 1u;
}

bool BigUint::any_bits_below(std::size_t n) const {
  const std::size_t full = n / 64;
  for (std::size_t i = 0; i < full && i < limbs_.size(); ++i)
    if (limbs_[i] != 0) return true;
  const std::size_t rem = n % 64;
  if (rem != 0 && full < limbs_.size())
    if ((limbs_[full] & ((uint64_t{1} << rem) - 1)) != 0) return true;
  return false;
}

std::size_t BigUint::trailing_zero_bits() const {
  assert(!limbs_.empty());
  std::size_t i = 0;
  while (limbs_[i] == 0) ++i;
  return 64 * i + std::countr_zero(limbs_[i]);
}

int BigUint::compare(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size())
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  for (std::size_t i = a.limbs_.size(); i-- > 0;)
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  return 0;
}

BigUint add(const BigUint& a, const BigUint& b) {
  BigUint r;
  const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
  r.limbs_.resize(n + 1, 0);
  uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    u128 s = carry;
    if (i < a.limbs_.size()) s += a.limbs_[i];
    if (i < b.limbs_.size()) s += b.limbs_[i];
    r.limbs_[i] = static_cast<uint64_t>(s);
    carry = static_cast<uint64_t>(s >> 64);
  }
  r.limbs_[n] = carry;
  r.trim();
  return r;
}

BigUint sub(const BigUint& a, const BigUint& b) {
  assert(BigUint::compare(a, b) >= 0);
  BigUint r;
  r.limbs_.resize(a.limbs_.size(), 0);
  uint64_t borrow = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    const uint64_t bi = i < b.limbs_.size() ? b.limbs_[i] : 0;
    const uint64_t t = a.limbs_[i] - bi;
    const uint64_t b1 = t > a.limbs_[i];
    const uint64_t t2 = t - borrow;
    const uint64_t b2 = t2 > t;
    r.limbs_[i] = t2;
    borrow = b1 | b2;
  }
  assert(borrow == 0);
  r.trim();
  return r;
}

BigUint mul(const BigUint& a, const BigUint& b) {
  if (a.is_zero() || b.is_zero()) return {};
  BigUint r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      u128 cur = static_cast<u128>(a.limbs_[i]) * b.limbs_[j] +
                 r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<uint64_t>(cur);
      carry = static_cast<uint64_t>(cur >> 64);
    }
    r.limbs_[i + b.limbs_.size()] = carry;
  }
  r.trim();
  return r;
}

BigUint mul_u64(const BigUint& a, uint64_t b) {
  if (a.is_zero() || b == 0) return {};
  BigUint r;
  r.limbs_.resize(a.limbs_.size() + 1, 0);
  uint64_t carry = 0;
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    u128 cur = static_cast<u128>(a.limbs_[i]) * b + carry;
    r.limbs_[i] = static_cast<uint64_t>(cur);
    carry = static_cast<uint64_t>(cur >> 64);
  }
  r.limbs_[a.limbs_.size()] = carry;
  r.trim();
  return r;
}

BigUint shl(const BigUint& a, std::size_t bits) {
  if (a.is_zero() || bits == 0) return a;
  assert(bits < kMaxAlignBits);
  const std::size_t limb_shift = bits / 64;
  const std::size_t bit_shift = bits % 64;
  BigUint r;
  r.limbs_.assign(a.limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    r.limbs_[i + limb_shift] |= a.limbs_[i] << bit_shift;
    if (bit_shift != 0)
      r.limbs_[i + limb_shift + 1] |= a.limbs_[i] >> (64 - bit_shift);
  }
  r.trim();
  return r;
}

BigUint shr(const BigUint& a, std::size_t bits) {
  const std::size_t limb_shift = bits / 64;
  if (limb_shift >= a.limbs_.size()) return {};
  const std::size_t bit_shift = bits % 64;
  BigUint r;
  r.limbs_.assign(a.limbs_.size() - limb_shift, 0);
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    r.limbs_[i] = a.limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < a.limbs_.size())
      r.limbs_[i] |= a.limbs_[i + limb_shift + 1] << (64 - bit_shift);
  }
  r.trim();
  return r;
}

DivMod BigUint::divmod_u64(const BigUint& a, uint64_t b) {
  assert(b != 0);
  DivMod out;
  out.quot.limbs_.assign(a.limbs_.size(), 0);
  uint64_t rem = 0;
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    u128 cur = (static_cast<u128>(rem) << 64) | a.limbs_[i];
    out.quot.limbs_[i] = static_cast<uint64_t>(cur / b);
    rem = static_cast<uint64_t>(cur % b);
  }
  out.quot.trim();
  out.rem = from_u64(rem);
  return out;
}

DivMod BigUint::divmod(const BigUint& a, const BigUint& b) {
  assert(!b.is_zero());
  if (compare(a, b) < 0) return {BigUint{}, a};
  if (b.limbs_.size() == 1) return divmod_u64(a, b.limbs_[0]);

  const int shift = std::countl_zero(b.limbs_.back());
  const BigUint vn = shl(b, static_cast<std::size_t>(shift));
  const BigUint an = shl(a, static_cast<std::size_t>(shift));
  const std::size_t n = vn.limbs_.size();
  std::vector<uint64_t> u = an.limbs_;
  u.resize(u.size() + 1, 0);
  assert(u.size() >= n + 1);
  const std::size_t m = u.size() - 1 - n;
  std::vector<uint64_t> q(m + 1, 0);
  const uint64_t v1 = vn.limbs_[n - 1];
  const uint64_t v2 = vn.limbs_[n - 2];

  for (std::size_t j = m + 1; j-- > 0;) {
    const u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
    uint64_t qhat = static_cast<uint64_t>(u[j + n] >= v1
                                              ? ~uint64_t{0}
                                              : num / v1);
    u128 rhat = num - static_cast<u128>(qhat) * v1;
    while ((rhat >> 64) == 0 &&
           static_cast<u128>(qhat) * v2 > ((rhat << 64) | u[j + n - 2])) {
      --qhat;
      rhat += v1;
    }

    uint64_t mul_carry = 0;
    uint64_t borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const u128 p = static_cast<u128>(qhat) * vn.limbs_[i] + mul_carry;
      const uint64_t plo = static_cast<uint64_t>(p);
      mul_carry = static_cast<uint64_t>(p >> 64);
      const uint64_t t = u[j + i] - plo;
      const uint64_t b1 = t > u[j + i];
      const uint64_t t2 = t - borrow;
      const uint64_t b2 = t2 > t;
      u[j + i] = t2;
      borrow = b1 | b2;
    }
    const u128 need = static_cast<u128>(mul_carry) + borrow;
    const bool went_negative = need > u[j + n];
    u[j + n] = static_cast<uint64_t>(u[j + n] - need);

    if (went_negative) {
      --qhat;
      uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const u128 s = static_cast<u128>(u[j + i]) + vn.limbs_[i] + carry;
        u[j + i] = static_cast<uint64_t>(s);
        carry = static_cast<uint64_t>(s >> 64);
      }
      u[j + n] += carry;
    }
    q[j] = qhat;
  }

  DivMod out;
  out.quot.limbs_ = std::move(q);
  out.quot.trim();
  BigUint rem;
  rem.limbs_.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
  rem.trim();
  out.rem = shr(rem, static_cast<std::size_t>(shift));
  return out;
}

SqrtRem BigUint::sqrt_rem(const BigUint& a) {
  if (a.is_zero()) return {};
  const std::size_t bl = a.bit_length();
  BigUint x = shl(from_u64(1), (bl + 1) / 2);
  while (true) {
    const BigUint y = shr(add(x, divmod(a, x).quot), 1);
    if (compare(y, x) >= 0) break;
    x = y;
  }
  SqrtRem out;
  out.rem = sub(a, mul(x, x));
  out.root = std::move(x);
  assert(compare(out.rem, add(shl(out.root, 1), from_u64(1))) < 0);
  return out;
}

// --------------------------------------------------------------------------
// BigFloat

void BigFloat::normalize() {
  if (kind_ != Kind::finite) {
    mant_ = BigUint{};
    exp_ = 0;
    return;
  }
  if (mant_.is_zero()) {
    kind_ = Kind::zero;
    exp_ = 0;
    return;
  }
  const std::size_t tz = mant_.trailing_zero_bits();
  if (tz != 0) {
    mant_ = shr(mant_, tz);
    exp_ += static_cast<int64_t>(tz);
  }
}

BigFloat BigFloat::zero(bool negative) {
  BigFloat r;
  r.kind_ = Kind::zero;
  r.neg_ = negative;
  return r;
}

BigFloat BigFloat::inf(bool negative) {
  BigFloat r;
  r.kind_ = Kind::inf;
  r.neg_ = negative;
  return r;
}

BigFloat BigFloat::nan() {
  BigFloat r;
  r.kind_ = Kind::nan;
  return r;
}

BigFloat BigFloat::from_parts(bool negative, BigUint mant, int64_t exp) {
  BigFloat r;
  r.kind_ = Kind::finite;
  r.neg_ = negative;
  r.mant_ = std::move(mant);
  r.exp_ = exp;
  r.normalize();
  return r;
}

BigFloat BigFloat::from_double(double d) {
  if (std::isnan(d)) return nan();
  if (std::isinf(d)) return inf(d < 0);
  if (d == 0.0) return zero(std::signbit(d));
  int e = 0;
  const double f = std::frexp(std::fabs(d), &e);
  const auto m = static_cast<uint64_t>(std::ldexp(f, 53));
  return from_parts(std::signbit(d), BigUint::from_u64(m), e - 53);
}

BigFloat BigFloat::from_i64(int64_t v) {
  if (v == 0) return zero(false);
  const bool neg = v < 0;
  const uint64_t mag = neg ? 0 - static_cast<uint64_t>(v)
                           : static_cast<uint64_t>(v);
  return from_parts(neg, BigUint::from_u64(mag), 0);
}

int64_t BigFloat::top_exp() const {
  assert(kind_ == Kind::finite);
  return exp_ + static_cast<int64_t>(mant_.bit_length());
}

BigFloat BigFloat::negated() const {
  BigFloat r = *this;
  if (kind_ != Kind::nan) r.neg_ = !r.neg_;
  return r;
}

BigFloat BigFloat::abs() const {
  BigFloat r = *this;
  r.neg_ = false;
  return r;
}

BigFloat BigFloat::scalb(int64_t k) const {
  BigFloat r = *this;
  if (kind_ == Kind::finite) r.exp_ += k;
  return r;
}

int BigFloat::abs_compare(const BigFloat& a, const BigFloat& b) {
  assert(!a.is_nan() && !b.is_nan());
  if (a.is_inf() || b.is_inf()) {
    if (a.is_inf() && b.is_inf()) return 0;
    return a.is_inf() ? 1 : -1;
  }
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return 0;
    return a.is_zero() ? -1 : 1;
  }
  const int64_t ha = a.top_exp();
  const int64_t hb = b.top_exp();
  if (ha != hb) return ha < hb ? -1 : 1;
  const int64_t e = std::min(a.exp_, b.exp_);
  return BigUint::compare(shl(a.mant_, static_cast<std::size_t>(a.exp_ - e)),
                          shl(b.mant_, static_cast<std::size_t>(b.exp_ - e)));
}

int BigFloat::compare(const BigFloat& a, const BigFloat& b) {
  assert(!a.is_nan() && !b.is_nan());
  if (a.is_zero() && b.is_zero()) return 0;
  const int sa = a.is_zero() ? 0 : (a.neg_ ? -1 : 1);
  const int sb = b.is_zero() ? 0 : (b.neg_ ? -1 : 1);
  if (sa != sb) return sa < sb ? -1 : 1;
  const int mag = abs_compare(a, b);
  return sa < 0 ? -mag : mag;
}

void BigFloat::round_to(int64_t prec, Rnd rnd, bool sticky) {
  assert(prec >= 2);
  if (kind_ != Kind::finite) return;
  // A sticky tail under nearest rounding is only meaningful when at least
  // one significand bit is dropped; it then breaks ties upward.
  assert(!(sticky && rnd == Rnd::nearest) ||
         static_cast<int64_t>(mant_.bit_length()) > prec);
  const bool away = (rnd == Rnd::up && !neg_) || (rnd == Rnd::down && neg_);
  const auto len = static_cast<int64_t>(mant_.bit_length());
  const int64_t drop = len - prec;

  if (drop <= 0) {
    if (!sticky || !away) return;
    // Step one quantum of the prec-bit grid, not of the (normalized, hence
    // possibly coarser) stored significand.
    mant_ = add(shl(mant_, static_cast<std::size_t>(-drop)),
                BigUint::from_u64(1));
    exp_ += drop;
    if (static_cast<int64_t>(mant_.bit_length()) > prec) {
      mant_ = shr(mant_, 1);
      exp_ += 1;
    }
    normalize();
    return;
  }

  const bool guard = mant_.get_bit(static_cast<std::size_t>(drop - 1));
  const bool rest =
      mant_.any_bits_below(static_cast<std::size_t>(drop - 1)) || sticky;
  mant_ = shr(mant_, static_cast<std::size_t>(drop));
  exp_ += drop;
  bool inc;
  if (rnd == Rnd::nearest)
    inc = guard && (rest || mant_.get_bit(0));
  else
    inc = away && (guard || rest);
  if (inc) {
    mant_ = add(mant_, BigUint::from_u64(1));
    if (static_cast<int64_t>(mant_.bit_length()) > prec) {
      mant_ = shr(mant_, 1);
      exp_ += 1;
    }
  }
  normalize();
}

BigFloat BigFloat::rounded(int64_t prec, Rnd rnd, bool sticky) const {
  BigFloat r = *this;
  r.round_to(prec, rnd, sticky);
  return r;
}

double BigFloat::to_double(Rnd rnd) const {
  switch (kind_) {
    case Kind::zero:
      return neg_ ? -0.0 : 0.0;
    case Kind::inf:
      return neg_ ? -std::numeric_limits<double>::infinity()
                  : std::numeric_limits<double>::infinity();
    case Kind::nan:
      return std::numeric_limits<double>::quiet_NaN();
    case Kind::finite:
      break;
  }
  const double huge = std::numeric_limits<double>::infinity();
  const double maxreal = std::numeric_limits<double>::max();
  const bool away = (rnd == Rnd::up && !neg_) || (rnd == Rnd::down && neg_);
  const int64_t h = top_exp();
  if (h > 1024) {
    if (rnd == Rnd::nearest || away) return neg_ ? -huge : huge;
    return neg_ ? -maxreal : maxreal;
  }

  const int64_t t = std::max(h - 53, int64_t{-1074});
  const int64_t drop = t - exp_;
  uint64_t m;
  int64_t e;
  if (drop <= 0) {
    m = mant_.low_u64();
    e = exp_;
  } else {
    const bool guard = mant_.get_bit(static_cast<std::size_t>(drop - 1));
    const bool rest = mant_.any_bits_below(static_cast<std::size_t>(drop - 1));
    m = shr(mant_, static_cast<std::size_t>(drop)).low_u64();
    e = t;
    bool inc;
    if (rnd == Rnd::nearest)
      inc = guard && (rest || (m & 1));
    else
      inc = away && (guard || rest);
    if (inc) ++m;
  }

  if (m == 0) return neg_ ? -0.0 : 0.0;
  if (64 - std::countl_zero(m) + e > 1024) return neg_ ? -huge : huge;
  const double mag = std::ldexp(static_cast<double>(m), static_cast<int>(e));
  return neg_ ? -mag : mag;
}

bool BigFloat::is_integer() const {
  if (kind_ == Kind::zero) return true;
  if (kind_ != Kind::finite) return false;
  return exp_ >= 0;
}

BigFloat BigFloat::round_to_integer() const {
  if (kind_ != Kind::finite || exp_ >= 0) return *this;
  const auto drop = static_cast<std::size_t>(-exp_);
  const bool guard = mant_.get_bit(drop - 1);
  const bool rest = mant_.any_bits_below(drop - 1);
  BigUint kept = shr(mant_, drop);
  if (guard && (rest || kept.get_bit(0))) kept = add(kept, BigUint::from_u64(1));
  return from_parts(neg_, std::move(kept), 0);
}

BigFloat BigFloat::floor_to_integer() const {
  if (kind_ != Kind::finite || exp_ >= 0) return *this;
  const auto drop = static_cast<std::size_t>(-exp_);
  const bool frac = mant_.get_bit(drop - 1) || mant_.any_bits_below(drop - 1);
  BigUint kept = shr(mant_, drop);
  if (neg_ && frac) kept = add(kept, BigUint::from_u64(1));
  return from_parts(neg_, std::move(kept), 0);
}

BigFloat BigFloat::ceil_to_integer() const {
  return negated().floor_to_integer().negated();
}

unsigned BigFloat::abs_mod4() const {
  if (kind_ == Kind::zero) return 0;
  assert(kind_ == Kind::finite && exp_ >= 0);
  if (exp_ >= 2) return 0;
  if (exp_ == 1) return static_cast<unsigned>(mant_.get_bit(0)) << 1;
  return static_cast<unsigned>(mant_.low_u64() & 3);
}

BigFloat add_exact(const BigFloat& a, const BigFloat& b) {
  if (a.is_nan() || b.is_nan()) return BigFloat::nan();
  if (a.is_inf() || b.is_inf()) {
    if (a.is_inf() && b.is_inf())
      return a.neg_ == b.neg_ ? a : BigFloat::nan();
    return a.is_inf() ? a : b;
  }
  if (a.is_zero() && b.is_zero()) return BigFloat::zero(a.neg_ && b.neg_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  const int64_t e = std::min(a.exp_, b.exp_);
  assert(static_cast<std::size_t>(std::max(a.exp_, b.exp_) - e) < kMaxAlignBits);
  const BigUint ma = shl(a.mant_, static_cast<std::size_t>(a.exp_ - e));
  const BigUint mb = shl(b.mant_, static_cast<std::size_t>(b.exp_ - e));
  if (a.neg_ == b.neg_) return BigFloat::from_parts(a.neg_, add(ma, mb), e);
  const int c = BigUint::compare(ma, mb);
  if (c == 0) return BigFloat::zero(false);
  if (c > 0) return BigFloat::from_parts(a.neg_, sub(ma, mb), e);
  return BigFloat::from_parts(b.neg_, sub(mb, ma), e);
}

BigFloat add(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd) {
  return add_exact(a, b).rounded(prec, rnd);
}

BigFloat sub(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd) {
  return add(a, b.negated(), prec, rnd);
}

BigFloat mul_exact(const BigFloat& a, const BigFloat& b) {
  if (a.is_nan() || b.is_nan()) return BigFloat::nan();
  const bool sign = a.neg_ != b.neg_;
  if (a.is_inf() || b.is_inf()) {
    if (a.is_zero() || b.is_zero()) return BigFloat::nan();
    return BigFloat::inf(sign);
  }
  if (a.is_zero() || b.is_zero()) return BigFloat::zero(sign);
  return BigFloat::from_parts(sign, mul(a.mant_, b.mant_), a.exp_ + b.exp_);
}

BigFloat mul(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd) {
  return mul_exact(a, b).rounded(prec, rnd);
}

BigFloat div(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd) {
  if (a.is_nan() || b.is_nan()) return BigFloat::nan();
  const bool sign = a.neg_ != b.neg_;
  if (a.is_inf()) return b.is_inf() ? BigFloat::nan() : BigFloat::inf(sign);
  if (b.is_inf()) return BigFloat::zero(sign);
  if (b.is_zero()) return a.is_zero() ? BigFloat::nan() : BigFloat::inf(sign);
  if (a.is_zero()) return BigFloat::zero(sign);

  const auto bla = static_cast<int64_t>(a.mant_.bit_length());
  const auto blb = static_cast<int64_t>(b.mant_.bit_length());
  const int64_t s = std::max(int64_t{0}, prec + 2 - (bla - blb));
  auto dm = BigUint::divmod(shl(a.mant_, static_cast<std::size_t>(s)), b.mant_);
  BigFloat r = BigFloat::from_parts(sign, std::move(dm.quot),
                                    a.exp_ - s - b.exp_);
  r.round_to(prec, rnd, !dm.rem.is_zero());
  return r;
}

BigFloat sqrt(const BigFloat& a, int64_t prec, Rnd rnd) {
  if (a.is_nan()) return BigFloat::nan();
  if (a.is_zero()) return a;
  if (a.neg_) return BigFloat::nan();
  if (a.is_inf()) return a;

  int64_t t = std::max(int64_t{0},
                       2 * (prec + 2) - static_cast<int64_t>(a.mant_.bit_length()));
  if ((a.exp_ - t) & 1) ++t;
  auto sr = BigUint::sqrt_rem(shl(a.mant_, static_cast<std::size_t>(t)));
  BigFloat r = BigFloat::from_parts(false, std::move(sr.root), (a.exp_ - t) / 2);
  r.round_to(prec, rnd, !sr.rem.is_zero());
  return r;
}

std::string BigFloat::debug_string() const {
  switch (kind_) {
    case Kind::zero:
      return neg_ ? "-0" : "0";
    case Kind::inf:
      return neg_ ? "-inf" : "inf";
    case Kind::nan:
      return "nan";
    case Kind::finite:
      break;
  }
  std::string s = neg_ ? "-0x" : "0x";
  const auto& limbs = mant_.limbs();
  char buf[17];
  for (std::size_t i = limbs.size(); i-- > 0;) {
    std::snprintf(buf, sizeof buf, i + 1 == limbs.size() ? "%llx" : "%016llx",
                  static_cast<unsigned long long>(limbs[i]));
    s += buf;
  }
  s += "p";
  s += std::to_string(exp_);
  return s;
}

// --------------------------------------------------------------------------
// Decimal literals

namespace {

BigUint pow5(int64_t k) {
  assert(k >= 0);
  // 5^27 is the largest power of five in a uint64.
  constexpr uint64_t kPow5_27 = 7450580596923828125ull;
  BigUint r = BigUint::from_u64(1);
  while (k >= 27) {
    r = mul_u64(r, kPow5_27);
    k -= 27;
  }
  uint64_t rest = 1;
  for (int64_t i = 0; i < k; ++i) rest *= 5;
  return mul_u64(r, rest);
}

// D * 10^k as an exact BigFloat; D nonzero, k >= 0.
BigFloat scale10_up(const BigUint& d, int64_t k) {
  return BigFloat::from_parts(false, mul(d, pow5(k)), k);
}

}  // namespace

DecimalParse parse_decimal(std::string_view text) {
  DecimalParse out;
  std::size_t i = 0;
  const auto fail = [&](std::size_t pos) {
    out.ok = false;
    out.error_pos = pos;
    return out;
  };

  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }

  constexpr int kMaxSigDigits = 400;
  BigUint digits;
  int sig_count = 0;
  int64_t ten_exp = 0;
  bool sticky = false;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_point) return fail(i);
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') break;
    any_digit = true;
    const int d = c - '0';
    const bool significant = sig_count > 0 || d != 0;
    if (significant && sig_count < kMaxSigDigits) {
      digits = mul_u64(digits, 10);
      if (d != 0) digits = add(digits, BigUint::from_u64(static_cast<uint64_t>(d)));
      ++sig_count;
      if (seen_point) --ten_exp;
    } else if (significant) {
      sticky |= d != 0;
      if (!seen_point) ++ten_exp;
    } else if (seen_point) {
      --ten_exp;  // leading zeros after the point shift the scale
    }
  }
  if (!any_digit) return fail(i);

  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || text[i] < '0' || text[i] > '9') return fail(i);
    int64_t ev = 0;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      if (ev < 10'000'000) ev = ev * 10 + (text[i] - '0');
    }
    ten_exp += eneg ? -ev : ev;
  }
  if (i != text.size()) return fail(i);

  out.ok = true;
  if (digits.is_zero()) {
    out.lo = out.hi = neg ? -0.0 : 0.0;
    out.exact = true;
    return out;
  }

  double lo_mag;
  double hi_mag;
  const int64_t dec_top = sig_count + ten_exp;
  if (dec_top > 400) {
    lo_mag = std::numeric_limits<double>::max();
    hi_mag = std::numeric_limits<double>::infinity();
  } else if (dec_top < -400) {
    lo_mag = 0.0;
    hi_mag = 0x1p-1074;
  } else if (ten_exp >= 0) {
    const BigFloat v = scale10_up(digits, ten_exp);
    lo_mag = v.to_double(Rnd::down);
    if (!sticky) {
      hi_mag = v.to_double(Rnd::up);
    } else {
      const BigFloat u =
          scale10_up(add(digits, BigUint::from_u64(1)), ten_exp);
      hi_mag = u.to_double(Rnd::up);
    }
  } else {
    const BigFloat den = BigFloat::from_parts(false, pow5(-ten_exp), 0);
    const BigFloat num = BigFloat::from_parts(false, digits, ten_exp);
    lo_mag = div(num, den, 70, Rnd::down).to_double(Rnd::down);
    BigFloat num_hi = num;
    if (sticky)
      num_hi = BigFloat::from_parts(false, add(digits, BigUint::from_u64(1)),
                                    ten_exp);
    hi_mag = div(num_hi, den, 70, Rnd::up).to_double(Rnd::up);
  }

  if (neg) {
    out.lo = -hi_mag;
    out.hi = -lo_mag;
  } else {
    out.lo = lo_mag;
    out.hi = hi_mag;
  }
  out.exact = !sticky && out.lo == out.hi;
  return out;
}

}  // namespace itlconform::bf
