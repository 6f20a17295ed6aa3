#pragma once
// Arbitrary-precision binary floating point with directed rounding.
//
// A finite BigFloat holds an integer significand and a power-of-two scale:
// value = (neg ? -1 : +1) * mant * 2^exp. add/sub/mul are exact before a
// single rounding at the requested precision; div/sqrt are correctly rounded
// at the requested precision; all rounding directions are explicit. This is
// the numeric substrate of the high-precision oracle and is deliberately
// independent of the Binary64 kernel so the two can check each other.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace itlconform::bf {

struct DivMod;
struct SqrtRem;

// Unsigned big integer, little-endian 64-bit limbs, no high zero limbs.
class BigUint {
 public:
  BigUint() = default;
  static BigUint from_u64(uint64_t v);

  bool is_zero() const { return limbs_.empty(); }
  std::size_t bit_length() const;
  bool get_bit(std::size_t i) const;
  bool any_bits_below(std::size_t n) const;
  std::size_t trailing_zero_bits() const;  // undefined for zero
  uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

  static int compare(const BigUint& a, const BigUint& b);

  friend BigUint add(const BigUint& a, const BigUint& b);
  friend BigUint sub(const BigUint& a, const BigUint& b);  // requires a >= b
  friend BigUint mul(const BigUint& a, const BigUint& b);
  friend BigUint mul_u64(const BigUint& a, uint64_t b);
  friend BigUint shl(const BigUint& a, std::size_t bits);
  friend BigUint shr(const BigUint& a, std::size_t bits);

  // Knuth algorithm D; b must be nonzero.
  static DivMod divmod(const BigUint& a, const BigUint& b);
  static DivMod divmod_u64(const BigUint& a, uint64_t b);

  static SqrtRem sqrt_rem(const BigUint& a);

  const std::vector<uint64_t>& limbs() const { return limbs_; }

 private:
  std::vector<uint64_t> limbs_;
  void trim();
};

struct DivMod {
  BigUint quot;
  BigUint rem;
};

struct SqrtRem {
  BigUint root;
  BigUint rem;  // a - root^2, with root^2 <= a < (root+1)^2
};

enum class Rnd { down, up, nearest };

class BigFloat {
 public:
  enum class Kind : uint8_t { zero, finite, inf, nan };

  BigFloat() = default;

  static BigFloat zero(bool negative = false);
  static BigFloat inf(bool negative = false);
  static BigFloat nan();
  static BigFloat from_double(double d);  // exact for all finite doubles
  static BigFloat from_i64(int64_t v);
  static BigFloat from_parts(bool negative, BigUint mant, int64_t exp);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  bool is_finite() const { return kind_ == Kind::finite || kind_ == Kind::zero; }
  bool is_inf() const { return kind_ == Kind::inf; }
  bool is_nan() const { return kind_ == Kind::nan; }
  bool negative() const { return neg_; }
  const BigUint& mant() const { return mant_; }
  int64_t exp() const { return exp_; }

  // Exponent h with |value| in [2^(h-1), 2^h); finite nonzero only.
  int64_t top_exp() const;

  BigFloat negated() const;
  BigFloat abs() const;
  // Exact scaling by 2^k.
  BigFloat scalb(int64_t k) const;

  // Total order with -inf < finite < +inf; zeros compare equal regardless
  // of sign. Neither side may be NaN.
  static int compare(const BigFloat& a, const BigFloat& b);
  static int abs_compare(const BigFloat& a, const BigFloat& b);

  // Round in place to `prec` significand bits. `sticky` asserts that the
  // true value is strictly above the stored one by less than one quantum
  // (used by div/sqrt and decimal conversion to fold dropped tails).
  void round_to(int64_t prec, Rnd rnd, bool sticky = false);
  BigFloat rounded(int64_t prec, Rnd rnd, bool sticky = false) const;

  double to_double(Rnd rnd) const;

  bool is_integer() const;
  // Nearest integer (ties to even), exact contents.
  BigFloat round_to_integer() const;
  BigFloat floor_to_integer() const;
  BigFloat ceil_to_integer() const;
  // Value mod 4 of an integer BigFloat (by absolute value); 0..3.
  unsigned abs_mod4() const;

  friend BigFloat add(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd);
  friend BigFloat sub(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd);
  friend BigFloat mul(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd);
  friend BigFloat mul_exact(const BigFloat& a, const BigFloat& b);
  friend BigFloat add_exact(const BigFloat& a, const BigFloat& b);
  friend BigFloat div(const BigFloat& a, const BigFloat& b, int64_t prec, Rnd rnd);
  friend BigFloat sqrt(const BigFloat& a, int64_t prec, Rnd rnd);

  std::string debug_string() const;

 private:
  Kind kind_ = Kind::zero;
  bool neg_ = false;
  int64_t exp_ = 0;
  BigUint mant_;

  void normalize();
};

// Directed conversion of a decimal literal to Binary64 bounds.
// lo/hi are round-down/round-up conversions of the written value; `exact`
// means the value is a Binary64 and lo == hi. Literals longer than the
// internal digit cap still yield containing bounds, only `exact` is lost.
struct DecimalParse {
  bool ok = false;
  std::size_t error_pos = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool exact = false;
};

DecimalParse parse_decimal(std::string_view text);

}  // namespace itlconform::bf
