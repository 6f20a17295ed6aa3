#pragma once
// Bit-exact Binary64 building blocks: error-free transforms, software
// directed rounding layered on round-to-nearest hardware, neighbour steps,
// and exact C99 hex-float text conversion.
//
// Nothing in this module ever switches the ambient rounding mode. Directed
// results are obtained by computing the round-to-nearest value, deciding the
// sign of the exact residual, and stepping one neighbour when needed. All
// functions are pure and safe to call concurrently.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace itlconform::fpk {

inline constexpr double kMaxReal      = 0x1.fffffffffffffp+1023; // largest finite
inline constexpr double kMinNormal    = 0x1p-1022;
inline constexpr double kMinSubnormal = 0x1p-1074;

enum class FpClass { zero, subnormal, normal, infinite, nan };

FpClass classify(double x);

// Neighbour steps over the extended ordered doubles.
//   next_up(-0.0) == next_up(+0.0) == kMinSubnormal
//   next_up(kMaxReal) == +inf, next_up(+inf) == +inf, NaN sticks.
double next_up(double x);
double next_down(double x);

// ---------------------------------------------------------------------------
// Error-free transforms.

// hi + lo == a + b exactly whenever hi is finite and a, b are finite;
// lo is zero or |lo| <= 1/2 ulp(hi). If hi is infinite or NaN, lo is NaN.
struct EftPair {
  double hi = 0.0;
  double lo = 0.0;
};

// hi == RN(a*b); hi + lo == a*b exactly when residual_exact is true.
// In the deep underflow range the exact residual may not be representable:
// lo then carries a correctly signed sticky approximation and
// residual_exact is false. Overflowed hi (infinite) sets lo to NaN.
struct EftProd {
  double hi = 0.0;
  double lo = 0.0;
  bool residual_exact = true;
};

EftPair two_sum(double a, double b);
EftProd two_prod(double a, double b);

// ---------------------------------------------------------------------------
// Software directed rounding.

enum class Dir { down, up };

enum class DirOp { add, sub, mul, div, sqrt, fma };

// Correctly rounded toward -inf / +inf result of the selected operation.
// sqrt uses only `a`; fma computes a*b + c. IEEE special-value semantics
// apply (NaN propagates, inf - inf is NaN, 0 * inf is NaN, ...), with one
// software-defined convention: an add/sub cancellation of nonzero operands
// is +0.0 under both directions (zero operands and exact zero mul/div/fma
// results keep the IEEE round-to-nearest sign).
// Positive results that underflow round to +0.0 (down) / kMinSubnormal (up);
// finite results that overflow round to kMaxReal (down) / +inf (up), with
// the mirrored rules on the negative side.
double dir_op(DirOp op, Dir dir, double a, double b = 0.0, double c = 0.0);

double dir_add(Dir dir, double a, double b);
double dir_sub(Dir dir, double a, double b);
double dir_mul(Dir dir, double a, double b);
double dir_div(Dir dir, double a, double b);
double dir_sqrt(Dir dir, double a);
double dir_fma(Dir dir, double a, double b, double c);

// Round-to-nearest value of the exact midpoint (a+b)/2 of two finite
// doubles, immune to overflow of a+b and to double rounding in the
// subnormal range.
double midpoint_rn(double a, double b);

// ---------------------------------------------------------------------------
// C99 hexadecimal float text.

// Canonical form: lowercase, "0x1." normalized mantissa (subnormals are
// renormalized), minimal fraction digits, explicit exponent sign: "0x1p+0",
// "-0x1.8p-4", "0x0p+0". Non-finite values render as "inf"/"-inf"/"nan".
std::string f64_to_hex(double x);

struct HexParse {
  enum class Status { ok, malformed, inexact };
  Status status = Status::malformed;
  double value = 0.0;
  std::size_t error_pos = 0;  // byte offset of the offending character
};

// Strict C99 hex-float grammar (sign, 0x/0X, hex digits with optional
// point, mandatory p/P exponent). Values that are not exactly representable
// in Binary64, including out-of-range exponents, report Status::inexact.
HexParse hex_to_f64(std::string_view text);

namespace detail {

// Exact residual signs, valid for all finite inputs including the ranges
// where fma-based residuals are inexact. Each returns -1, 0 or +1.
int sign_ab_minus_r(double a, double b, double r);         // a*b - r
int sign_a_minus_rb(double a, double r, double b);         // a - r*b
int sign_a_minus_r2(double a, double r);                   // a - r*r
int sign_ab_plus_c_minus_r(double a, double b, double c, double r);

}  // namespace detail

}  // namespace itlconform::fpk
