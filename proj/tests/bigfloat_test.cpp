#include "itlconform/bigfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>

#include "doctest.h"

using namespace itlconform::bf;

namespace {

uint64_t rng_below(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

BigUint random_uint(std::mt19937_64& rng, int max_limbs) {
  const auto limbs = 1 + rng_below(rng, static_cast<uint64_t>(max_limbs));
  BigUint r;
  for (uint64_t i = 0; i < limbs; ++i) {
    r = shl(r, 64);
    r = add(r, BigUint::from_u64(rng()));
  }
  return r;
}

// Bit-by-bit schoolbook division, independent of the library's algorithm.
std::pair<BigUint, BigUint> longdiv(const BigUint& a, const BigUint& b) {
  BigUint q, r;
  const BigUint one = BigUint::from_u64(1);
  for (std::size_t i = a.bit_length(); i-- > 0;) {
    q = shl(q, 1);
    r = shl(r, 1);
    if (a.get_bit(i)) r = add(r, one);
    if (BigUint::compare(r, b) >= 0) {
      r = sub(r, b);
      q = add(q, one);
    }
  }
  return {q, r};
}

// Product rebuilt from 64x64 partial products using only add/shl.
BigUint ref_mul(const BigUint& a, const BigUint& b) {
  BigUint r;
  for (std::size_t i = 0; i < a.limbs().size(); ++i) {
    for (std::size_t j = 0; j < b.limbs().size(); ++j) {
      const unsigned __int128 p =
          static_cast<unsigned __int128>(a.limbs()[i]) * b.limbs()[j];
      BigUint part = shl(BigUint::from_u64(static_cast<uint64_t>(p >> 64)), 64);
      part = add(part, BigUint::from_u64(static_cast<uint64_t>(p)));
      r = add(r, shl(part, 64 * (i + j)));
    }
  }
  return r;
}

double random_double(std::mt19937_64& rng, int max_exp_mag) {
  const uint64_t mant = rng() & ((uint64_t{1} << 52) - 1);
  const uint64_t e =
      1 + rng_below(rng, static_cast<uint64_t>(2 * max_exp_mag));
  const uint64_t sign = (rng() & 1) << 63;
  const uint64_t biased = 1023 - max_exp_mag + e;
  return std::bit_cast<double>(sign | (biased << 52) | mant);
}

}  // namespace

TEST_CASE("biguint small values and bit queries") {
  const BigUint z;
  CHECK(z.is_zero());
  CHECK(z.bit_length() == 0);
  CHECK_FALSE(z.any_bits_below(1000));

  const BigUint v = BigUint::from_u64(0b101000);
  CHECK(v.bit_length() == 6);
  CHECK(v.get_bit(3));
  CHECK(v.get_bit(5));
  CHECK_FALSE(v.get_bit(4));
  CHECK_FALSE(v.get_bit(123));
  CHECK(v.trailing_zero_bits() == 3);
  CHECK_FALSE(v.any_bits_below(3));
  CHECK(v.any_bits_below(4));
}

TEST_CASE("biguint add/sub round trip") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    const BigUint a = random_uint(rng, 6);
    const BigUint b = random_uint(rng, 6);
    const BigUint s = add(a, b);
    CHECK(BigUint::compare(sub(s, b), a) == 0);
    CHECK(BigUint::compare(sub(s, a), b) == 0);
    CHECK(BigUint::compare(s, a) >= 0);
  }
}

TEST_CASE("biguint multiplication matches rebuilt partial products") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 100; ++it) {
    const BigUint a = random_uint(rng, 5);
    const BigUint b = random_uint(rng, 5);
    CHECK(BigUint::compare(mul(a, b), ref_mul(a, b)) == 0);
    CHECK(BigUint::compare(mul(a, b), mul(b, a)) == 0);
  }
  const BigUint x = random_uint(rng, 4);
  CHECK(mul(x, BigUint{}).is_zero());
  for (int it = 0; it < 50; ++it) {
    const uint64_t k = rng();
    const BigUint a = random_uint(rng, 4);
    CHECK(BigUint::compare(mul_u64(a, k), mul(a, BigUint::from_u64(k))) == 0);
  }
}

TEST_CASE("biguint shifts invert") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    const BigUint a = random_uint(rng, 5);
    const auto bits = rng_below(rng, 200);
    CHECK(BigUint::compare(shr(shl(a, bits), bits), a) == 0);
  }
  CHECK(shr(BigUint::from_u64(0xff), 8).is_zero());
  CHECK(BigUint::compare(shl(BigUint::from_u64(1), 64),
                         mul_u64(BigUint::from_u64(1ull << 32), 1ull << 32)) ==
        0);
}

TEST_CASE("biguint division reconstructs and matches bitwise reference") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 150; ++it) {
    const BigUint a = random_uint(rng, 6);
    BigUint b = random_uint(rng, 3);
    if (b.is_zero()) b = BigUint::from_u64(1);
    const auto dm = BigUint::divmod(a, b);
    CHECK(BigUint::compare(add(mul(dm.quot, b), dm.rem), a) == 0);
    CHECK(BigUint::compare(dm.rem, b) < 0);
    if (a.bit_length() <= 384) {
      const auto ref = longdiv(a, b);
      CHECK(BigUint::compare(dm.quot, ref.first) == 0);
      CHECK(BigUint::compare(dm.rem, ref.second) == 0);
    }
  }
  for (int it = 0; it < 50; ++it) {
    const BigUint a = random_uint(rng, 5);
    const uint64_t b = rng() | 1;
    const auto dm = BigUint::divmod_u64(a, b);
    const auto dm2 = BigUint::divmod(a, BigUint::from_u64(b));
    CHECK(BigUint::compare(dm.quot, dm2.quot) == 0);
    CHECK(BigUint::compare(dm.rem, dm2.rem) == 0);
  }
  // Quotient-estimate correction paths need top limbs close to the divisor.
  for (int it = 0; it < 400; ++it) {
    BigUint b = random_uint(rng, 2);
    b = add(shl(BigUint::from_u64(0x8000000000000000ull),
                64 * (1 + rng_below(rng, 2))),
            b);
    BigUint a = mul(b, random_uint(rng, 2));
    if (rng() & 1) a = add(a, sub(b, BigUint::from_u64(1)));
    const auto dm = BigUint::divmod(a, b);
    CHECK(BigUint::compare(add(mul(dm.quot, b), dm.rem), a) == 0);
    CHECK(BigUint::compare(dm.rem, b) < 0);
  }
}

TEST_CASE("biguint square root with remainder") {
  std::mt19937_64 rng(15);
  const BigUint one = BigUint::from_u64(1);
  for (int it = 0; it < 80; ++it) {
    const BigUint a = random_uint(rng, 1 + static_cast<int>(rng_below(rng, 8)));
    const auto sr = BigUint::sqrt_rem(a);
    CHECK(BigUint::compare(add(mul(sr.root, sr.root), sr.rem), a) == 0);
    const BigUint next = add(sr.root, one);
    CHECK(BigUint::compare(mul(next, next), a) > 0);
  }
  for (uint64_t n : {0ull, 1ull, 2ull, 3ull, 4ull, 15ull, 16ull, 17ull,
                     624ull, 625ull, 626ull}) {
    const auto sr = BigUint::sqrt_rem(BigUint::from_u64(n));
    const uint64_t root = sr.root.low_u64();
    CHECK(root * root <= n);
    CHECK((root + 1) * (root + 1) > n);
  }
}

TEST_CASE("bigfloat double round trip") {
  const double specials[] = {0.0,
                             -0.0,
                             1.0,
                             -1.0,
                             0.1,
                             1e300,
                             0x1.fffffffffffffp+1023,
                             0x1p-1022,
                             0x1p-1074,
                             -0x1p-1074,
                             0x1.5555555555555p-2};
  for (const double d : specials) {
    const BigFloat v = BigFloat::from_double(d);
    for (const Rnd r : {Rnd::down, Rnd::up, Rnd::nearest}) {
      const double back = v.to_double(r);
      CHECK(back == d);
      CHECK(std::signbit(back) == std::signbit(d));
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(BigFloat::from_double(inf).to_double(Rnd::down) == inf);
  CHECK(BigFloat::from_double(-inf).to_double(Rnd::up) == -inf);
  CHECK(std::isnan(BigFloat::from_double(std::nan("")).to_double(Rnd::up)));

  std::mt19937_64 rng(16);
  for (int it = 0; it < 500; ++it) {
    const double d = random_double(rng, 1000);
    CHECK(BigFloat::from_double(d).to_double(Rnd::nearest) == d);
    CHECK(BigFloat::from_double(d).to_double(Rnd::down) == d);
  }
}

TEST_CASE("bigfloat ordering matches double ordering") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 500; ++it) {
    const double a = random_double(rng, 600);
    const double b = random_double(rng, 600);
    const int c = BigFloat::compare(BigFloat::from_double(a),
                                    BigFloat::from_double(b));
    if (a < b) CHECK(c < 0);
    if (a > b) CHECK(c > 0);
    if (a == b) CHECK(c == 0);
  }
  CHECK(BigFloat::compare(BigFloat::zero(true), BigFloat::zero(false)) == 0);
  CHECK(BigFloat::compare(BigFloat::inf(true), BigFloat::from_double(-1e308)) <
        0);
  CHECK(BigFloat::compare(BigFloat::from_double(1e308), BigFloat::inf(false)) <
        0);
}

TEST_CASE("bigfloat directed conversion of off-grid values") {
  std::mt19937_64 rng(18);
  const BigFloat tiny = BigFloat::from_parts(false, BigUint::from_u64(1), -1200);
  for (int it = 0; it < 300; ++it) {
    const double d = random_double(rng, 900);
    const BigFloat v = add_exact(BigFloat::from_double(d), tiny);
    const double down = v.to_double(Rnd::down);
    const double up = v.to_double(Rnd::up);
    if (d > 0) {
      CHECK(down == d);
      CHECK(up == std::nextafter(d, HUGE_VAL));
    } else {
      CHECK(up == std::nextafter(d, HUGE_VAL));
      CHECK(down == d);
    }
    CHECK(v.to_double(Rnd::nearest) == d);
  }
}

TEST_CASE("bigfloat conversion at the range boundaries") {
  const double maxreal = 0x1.fffffffffffffp+1023;
  const double inf = std::numeric_limits<double>::infinity();

  const BigFloat two1024 = BigFloat::from_parts(false, BigUint::from_u64(1), 1024);
  CHECK(two1024.to_double(Rnd::down) == maxreal);
  CHECK(two1024.to_double(Rnd::up) == inf);
  CHECK(two1024.to_double(Rnd::nearest) == inf);
  CHECK(two1024.negated().to_double(Rnd::down) == -inf);
  CHECK(two1024.negated().to_double(Rnd::up) == -maxreal);

  // maxreal + half an ulp: the nearest tie breaks toward the even 2^1024.
  const BigFloat halfup =
      add_exact(BigFloat::from_double(maxreal),
                BigFloat::from_parts(false, BigUint::from_u64(1), 970));
  CHECK(halfup.to_double(Rnd::nearest) == inf);
  CHECK(halfup.to_double(Rnd::down) == maxreal);
  CHECK(halfup.to_double(Rnd::up) == inf);

  // Half of the smallest subnormal: the tie breaks toward the even zero.
  const BigFloat halfmin = BigFloat::from_parts(false, BigUint::from_u64(1), -1075);
  CHECK(halfmin.to_double(Rnd::nearest) == 0.0);
  CHECK(halfmin.to_double(Rnd::down) == 0.0);
  CHECK(halfmin.to_double(Rnd::up) == 0x1p-1074);
  CHECK(halfmin.negated().to_double(Rnd::down) == -0x1p-1074);
  CHECK(halfmin.negated().to_double(Rnd::up) == 0.0);
  CHECK(std::signbit(halfmin.negated().to_double(Rnd::up)));

  const BigFloat threequarters =
      BigFloat::from_parts(false, BigUint::from_u64(3), -1076);
  CHECK(threequarters.to_double(Rnd::nearest) == 0x1p-1074);
}

TEST_CASE("bigfloat exact integer arithmetic") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 300; ++it) {
    const auto a = static_cast<int64_t>(rng() >> 20) - (1ll << 43);
    const auto b = static_cast<int64_t>(rng() >> 20) - (1ll << 43);
    const BigFloat fa = BigFloat::from_i64(a);
    const BigFloat fb = BigFloat::from_i64(b);
    CHECK(add_exact(fa, fb).to_double(Rnd::nearest) ==
          static_cast<double>(a + b));
    const auto prod = static_cast<__int128>(a) * b;
    const bool pneg = prod < 0;
    const auto mag = pneg ? 0 - static_cast<unsigned __int128>(prod)
                          : static_cast<unsigned __int128>(prod);
    BigFloat ref = add_exact(
        BigFloat::from_parts(false,
                             BigUint::from_u64(static_cast<uint64_t>(mag >> 64)),
                             64),
        BigFloat::from_parts(false,
                             BigUint::from_u64(static_cast<uint64_t>(mag)), 0));
    if (pneg) ref = ref.negated();
    CHECK(BigFloat::compare(mul_exact(fa, fb), ref) == 0);
  }
  CHECK(add_exact(BigFloat::from_i64(1), BigFloat::from_i64(-1)).is_zero());
  CHECK_FALSE(
      add_exact(BigFloat::from_i64(1), BigFloat::from_i64(-1)).negative());
}

TEST_CASE("bigfloat zero sign conventions") {
  const BigFloat pz = BigFloat::zero(false);
  const BigFloat nz = BigFloat::zero(true);
  CHECK(add_exact(nz, nz).negative());
  CHECK_FALSE(add_exact(nz, pz).negative());
  CHECK_FALSE(add_exact(pz, pz).negative());
  // Cancellation of nonzero values pins the sign to +0.
  CHECK_FALSE(add_exact(BigFloat::from_double(1.5),
                        BigFloat::from_double(-1.5))
                  .negative());
  CHECK(mul_exact(nz, BigFloat::from_double(3.0)).negative());
  CHECK_FALSE(mul_exact(nz, BigFloat::from_double(-3.0)).negative());
  CHECK(div(BigFloat::from_double(-1.0), BigFloat::inf(false), 53, Rnd::down)
            .is_zero());
  CHECK(div(BigFloat::from_double(-1.0), BigFloat::inf(false), 53, Rnd::down)
            .negative());
}

TEST_CASE("bigfloat division brackets the true quotient") {
  std::mt19937_64 rng(20);
  for (int it = 0; it < 200; ++it) {
    const double a = std::fabs(random_double(rng, 400)) + 1e-30;
    const double b = std::fabs(random_double(rng, 400)) + 1e-30;
    const BigFloat fa = BigFloat::from_double(a);
    const BigFloat fb = BigFloat::from_double(b);
    const int64_t prec = 53 + static_cast<int64_t>(rng_below(rng, 40));
    const BigFloat qd = div(fa, fb, prec, Rnd::down);
    const BigFloat qu = div(fa, fb, prec, Rnd::up);
    CHECK(BigFloat::compare(qd, qu) <= 0);
    CHECK(BigFloat::compare(mul_exact(qd, fb), fa) <= 0);
    CHECK(BigFloat::compare(mul_exact(qu, fb), fa) >= 0);
    if (BigFloat::compare(qd, qu) != 0) {
      // The two bounds are adjacent in the prec-bit grid.
      const BigFloat ulp = add_exact(qu, qd.negated());
      CHECK(BigFloat::compare(
                ulp, BigFloat::from_parts(false, BigUint::from_u64(1),
                                          qu.top_exp() - prec)) <= 0);
      CHECK(BigFloat::compare(mul_exact(qd, fb), fa) < 0);
      CHECK(BigFloat::compare(mul_exact(qu, fb), fa) > 0);
    }
  }
  CHECK(div(BigFloat::from_i64(1), BigFloat::from_i64(8), 53, Rnd::down)
            .to_double(Rnd::nearest) == 0.125);
}

TEST_CASE("bigfloat square root brackets tightly") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 150; ++it) {
    const double a = std::fabs(random_double(rng, 500)) + 1e-30;
    const BigFloat fa = BigFloat::from_double(a);
    const BigFloat sd = sqrt(fa, 60, Rnd::down);
    const BigFloat su = sqrt(fa, 60, Rnd::up);
    CHECK(BigFloat::compare(mul_exact(sd, sd), fa) <= 0);
    CHECK(BigFloat::compare(mul_exact(su, su), fa) >= 0);
    if (BigFloat::compare(sd, su) != 0) {
      const BigFloat ulp = add_exact(su, sd.negated());
      CHECK(BigFloat::compare(
                ulp, BigFloat::from_parts(false, BigUint::from_u64(1),
                                          su.top_exp() - 60)) <= 0);
    }
  }
  for (const double sq : {4.0, 9.0, 2.25, 0x1p-1074, 0x1p+600}) {
    const BigFloat r = sqrt(BigFloat::from_double(sq), 53, Rnd::down);
    CHECK(BigFloat::compare(r, sqrt(BigFloat::from_double(sq), 53, Rnd::up)) ==
          0);
    CHECK(mul_exact(r, r).to_double(Rnd::nearest) == sq);
  }
  CHECK(sqrt(BigFloat::from_double(-1.0), 53, Rnd::down).is_nan());
  CHECK(sqrt(BigFloat::inf(false), 53, Rnd::down).is_inf());
  CHECK(sqrt(BigFloat::zero(true), 53, Rnd::down).is_zero());
}

TEST_CASE("bigfloat rounding to a narrower significand") {
  const BigFloat fifteen = BigFloat::from_i64(15);
  CHECK(fifteen.rounded(3, Rnd::down).to_double(Rnd::nearest) == 14.0);
  CHECK(fifteen.rounded(3, Rnd::up).to_double(Rnd::nearest) == 16.0);
  CHECK(fifteen.rounded(3, Rnd::nearest).to_double(Rnd::nearest) == 16.0);
  CHECK(BigFloat::from_i64(-15).rounded(3, Rnd::down).to_double(Rnd::nearest) ==
        -16.0);
  CHECK(BigFloat::from_i64(-15).rounded(3, Rnd::up).to_double(Rnd::nearest) ==
        -14.0);
  // Ties go to the even significand.
  CHECK(BigFloat::from_i64(20).rounded(3, Rnd::nearest).to_double(Rnd::nearest) ==
        20.0);
  CHECK(BigFloat::from_i64(22).rounded(3, Rnd::nearest).to_double(Rnd::nearest) ==
        24.0);
  CHECK(BigFloat::from_i64(26).rounded(3, Rnd::nearest).to_double(Rnd::nearest) ==
        24.0);
  // A sticky tail forces the away side even when no bits are dropped.
  CHECK(fifteen.rounded(4, Rnd::up, true).to_double(Rnd::nearest) == 16.0);
  CHECK(fifteen.rounded(4, Rnd::down, true).to_double(Rnd::nearest) == 15.0);
}

TEST_CASE("bigfloat integer rounding helpers") {
  CHECK(BigFloat::from_double(2.5).round_to_integer().to_double(Rnd::nearest) ==
        2.0);
  CHECK(BigFloat::from_double(3.5).round_to_integer().to_double(Rnd::nearest) ==
        4.0);
  CHECK(BigFloat::from_double(-2.5).round_to_integer().to_double(Rnd::nearest) ==
        -2.0);
  CHECK(BigFloat::from_double(0.49).round_to_integer().is_zero());
  CHECK(BigFloat::from_double(-0.75).round_to_integer().to_double(
            Rnd::nearest) == -1.0);
  CHECK(BigFloat::from_double(1e300).is_integer());
  CHECK_FALSE(BigFloat::from_double(0.5).is_integer());
  CHECK(BigFloat::zero(false).is_integer());

  CHECK(BigFloat::from_i64(7).abs_mod4() == 3);
  CHECK(BigFloat::from_i64(-7).abs_mod4() == 3);
  CHECK(BigFloat::from_i64(6).abs_mod4() == 2);
  CHECK(BigFloat::from_i64(4).abs_mod4() == 0);
  CHECK(BigFloat::from_i64(1).abs_mod4() == 1);
  CHECK(BigFloat::from_i64(12).abs_mod4() == 0);
  CHECK(BigFloat::zero(false).abs_mod4() == 0);
}

TEST_CASE("decimal literals convert with directed bounds") {
  struct Case {
    const char* text;
    bool exact;
  };
  const Case cases[] = {
      {"0.5", true},       {"-0.5", true},    {"4.0", true},
      {"1e3", true},       {"1024", true},    {"0.1", false},
      {"3.14159", false},  {"2.718281828e-10", false},
      {"1e308", false},    {"1e-308", false}, {"4.9e-324", false},
      {"2.5e-324", false}, {"123456789123456789", false},
      {"9007199254740993", false},
      {"0.125", true},     {"-0.375e2", true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const DecimalParse p = parse_decimal(c.text);
    REQUIRE(p.ok);
    CHECK(p.exact == c.exact);
    const double nearest = std::strtod(c.text, nullptr);
    CHECK((nearest == p.lo || nearest == p.hi));
    if (p.exact) {
      CHECK(p.lo == p.hi);
    } else {
      CHECK(p.hi == std::nextafter(p.lo, HUGE_VAL));
    }
  }
}

TEST_CASE("decimal literal edge forms") {
  for (const char* text : {"0", "0.000", "-0", "0e99", "-0.0e-99"}) {
    const DecimalParse p = parse_decimal(text);
    REQUIRE(p.ok);
    CHECK(p.exact);
    CHECK(p.lo == 0.0);
    CHECK(p.hi == 0.0);
    CHECK(std::signbit(p.lo) == (text[0] == '-'));
  }

  const DecimalParse huge = parse_decimal("1e999");
  REQUIRE(huge.ok);
  CHECK(huge.lo == 0x1.fffffffffffffp+1023);
  CHECK(huge.hi == HUGE_VAL);
  const DecimalParse nhuge = parse_decimal("-1e999");
  REQUIRE(nhuge.ok);
  CHECK(nhuge.lo == -HUGE_VAL);
  CHECK(nhuge.hi == -0x1.fffffffffffffp+1023);
  const DecimalParse tiny = parse_decimal("1e-999");
  REQUIRE(tiny.ok);
  CHECK(tiny.lo == 0.0);
  CHECK(tiny.hi == 0x1p-1074);

  for (const char* bad : {"", "abc", "1.2.3", "1e", "--5", "1 2", ".", "+",
                          "5e+", "0x10p0"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_decimal(bad).ok);
  }

  // Very long literals still produce containing bounds.
  std::string third = "1.";
  third.append(500, '3');
  const DecimalParse p = parse_decimal(third);
  REQUIRE(p.ok);
  CHECK_FALSE(p.exact);
  CHECK(p.lo <= 4.0 / 3.0);
  CHECK(p.hi >= 4.0 / 3.0);
  CHECK(p.hi - p.lo <= 4 * std::nextafter(1.0, 2.0) - 4);
}

TEST_CASE("decimal round trip through shortest representations") {
  std::mt19937_64 rng(22);
  char buf[64];
  for (int it = 0; it < 300; ++it) {
    const double d = random_double(rng, 300);
    const int n = std::snprintf(buf, sizeof buf, "%.17g", d);
    REQUIRE(n > 0);
    const DecimalParse p = parse_decimal(buf);
    REQUIRE(p.ok);
    CHECK((p.lo == d || p.hi == d));
  }
}
