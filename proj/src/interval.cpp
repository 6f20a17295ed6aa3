#include "itlconform/interval.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "itlconform/bigfloat.hpp"
#include "itlconform/fpkernel.hpp"
#include "itlconform/oracle.hpp"

namespace itlconform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

using fpk::Dir;

double norm0(double v) { return v == 0.0 ? 0.0 : v; }

Interval out(double lo, double hi) { return Interval::unchecked(lo, hi); }

}  // namespace

Interval Interval::unchecked(double lo, double hi) {
  Interval r;
  r.lo_ = norm0(lo);
  r.hi_ = norm0(hi);
  r.empty_ = false;
  assert(!std::isnan(lo) && !std::isnan(hi));
  assert(r.lo_ <= r.hi_ && r.lo_ < kInf && r.hi_ > -kInf);
  return r;
}

IntervalResult make_interval(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf ||
      hi == -kInf)
    return {Interval::empty(), Signal::undefined_operation};
  return {Interval::unchecked(lo, hi), Signal::none};
}

// ---------------------------------------------------------------------------
// Arithmetic.

namespace {

// Candidate collector for corner-based range bounds; NaN corners are
// combinations that cannot constrain the side being computed.
struct Reduce {
  double lo = kInf;
  double hi = -kInf;
  void add_lo(double v) {
    if (!std::isnan(v)) lo = std::min(lo, v);
  }
  void add_hi(double v) {
    if (!std::isnan(v)) hi = std::max(hi, v);
  }
};

double mul_corner(Dir dir, double a, double b) {
  // A zero factor annihilates an unbounded one: zero is attained, so the
  // corner contributes 0 rather than an indeterminate product.
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return 0.0;
  return fpk::dir_mul(dir, a, b);
}

double fma_corner(Dir dir, double a, double b, double c) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return c;
  return fpk::dir_fma(dir, a, b, c);
}

bool is_zero_point(const Interval& x) { return x.lo() == 0.0 && x.hi() == 0.0; }

}  // namespace

Interval neg(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  return out(-x.hi(), -x.lo());
}

Interval add(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  return out(fpk::dir_add(Dir::down, x.lo(), y.lo()),
             fpk::dir_add(Dir::up, x.hi(), y.hi()));
}

Interval sub(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  return out(fpk::dir_sub(Dir::down, x.lo(), y.hi()),
             fpk::dir_sub(Dir::up, x.hi(), y.lo()));
}

Interval mul(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  if (is_zero_point(x) || is_zero_point(y)) return out(0.0, 0.0);
  Reduce r;
  for (double a : {x.lo(), x.hi()})
    for (double b : {y.lo(), y.hi()}) {
      r.add_lo(mul_corner(Dir::down, a, b));
      r.add_hi(mul_corner(Dir::up, a, b));
    }
  return out(r.lo, r.hi);
}

Interval div(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  if (is_zero_point(y)) return Interval::empty();
  if (y.lo() < 0.0 && y.hi() > 0.0)
    return is_zero_point(x) ? out(0.0, 0.0) : Interval::entire();
  if (is_zero_point(x)) return out(0.0, 0.0);

  // One-sided limit toward a zero divisor endpoint: sign of the numerator
  // against the signed approach side.
  const auto limit0 = [](double a, bool from_above) {
    if (a == 0.0) return 0.0;
    return (a > 0.0) == from_above ? kInf : -kInf;
  };

  Reduce r;
  for (double a : {x.lo(), x.hi()}) {
    for (double b : {y.lo(), y.hi()}) {
      if (b == 0.0) {
        const double v = limit0(a, y.hi() > 0.0);
        r.add_lo(v);
        r.add_hi(v);
      } else if (std::isinf(a) && std::isinf(b)) {
        // Dominated: the finite-corner quotients already span this side.
        continue;
      } else {
        r.add_lo(fpk::dir_div(Dir::down, a, b));
        r.add_hi(fpk::dir_div(Dir::up, a, b));
      }
    }
  }
  return out(r.lo, r.hi);
}

Interval recip(const Interval& x) { return div(out(1.0, 1.0), x); }

Interval sqr(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  const double m = mig(x);
  const double big = mag(x);
  return out(fpk::dir_mul(Dir::down, m, m), fpk::dir_mul(Dir::up, big, big));
}

Interval sqrt(const Interval& x) {
  if (x.is_empty() || x.hi() < 0.0) return Interval::empty();
  const double lo = std::max(x.lo(), 0.0);
  return out(fpk::dir_sqrt(Dir::down, lo), fpk::dir_sqrt(Dir::up, x.hi()));
}

Interval fma(const Interval& x, const Interval& y, const Interval& z) {
  if (x.is_empty() || y.is_empty() || z.is_empty()) return Interval::empty();
  if (is_zero_point(x) || is_zero_point(y)) return add(out(0.0, 0.0), z);
  Reduce r;
  for (double a : {x.lo(), x.hi()})
    for (double b : {y.lo(), y.hi()}) {
      r.add_lo(fma_corner(Dir::down, a, b, z.lo()));
      r.add_hi(fma_corner(Dir::up, a, b, z.hi()));
    }
  return out(r.lo, r.hi);
}

// ---------------------------------------------------------------------------
// Elementary functions.

namespace {

double host_eval(Op f, double a) {
  switch (f) {
    case Op::exp:   return std::exp(a);
    case Op::log:   return std::log(a);
    case Op::log2:  return std::log2(a);
    case Op::log10: return std::log10(a);
    case Op::sin:   return std::sin(a);
    case Op::cos:   return std::cos(a);
    case Op::tan:   return std::tan(a);
    case Op::atan:  return std::atan(a);
    default:        std::abort();
  }
}

// Fixed probe arguments per function. The host value must be one of the two
// correctly rounded neighbours of the true value at every probe, i.e. the
// libm error stays below one ulp where we rely on it.
bool probe_host(Op f, std::span<const double> args) {
  for (double a : args) {
    const oracle::Iv pt{a, a};
    const auto enc = oracle::tightest_eval(f, std::span(&pt, 1));
    if (!enc.certified) continue;
    const double h = host_eval(f, a);
    if (h != enc.lo && h != enc.hi) return false;
  }
  return true;
}

bool probe_host_pow() {
  static constexpr double pairs[][2] = {
      {1.5, -7.25},  {2.5, 3.2},    {10.0, 2.5},  {0.3, 12.5},
      {7.0, -0.33},  {100.0, 15.5}, {2.0, 60.5},  {0.9, -200.25},
  };
  for (const auto& p : pairs) {
    const oracle::Iv args[2] = {{p[0], p[0]}, {p[1], p[1]}};
    const auto enc = oracle::tightest_eval(Op::pow, args);
    if (!enc.certified) continue;
    const double h = std::pow(p[0], p[1]);
    if (h != enc.lo && h != enc.hi) return false;
  }
  return true;
}

struct TrustTable {
  std::array<bool, kOpCount> ok{};
};

const TrustTable& host_trust() {
  static const TrustTable table = [] {
    TrustTable t;
    constexpr double exp_pts[] = {-600.5, -37.25, -3.1, -0x1.2p-20, 0.7,
                                  1.0,    2.5,    19.875, 103.3,    640.25};
    constexpr double log_pts[] = {0x1p-1040, 1e-9, 0.3,  0.9990234375, 1.5,
                                  2.0,       97.5, 1e18, 0x1.8p900};
    constexpr double trig_pts[] = {0.5,          1.0,   2.25,     3.5,
                                   6.0,          10.125, 100.5,   1e6 + 0.5,
                                   0x1.8p30,     0x1p400, 1e300,  -7.3};
    constexpr double atan_pts[] = {-1e300, -2.0, -0.1, 0.1, 1.0, 5.0, 1e15};
    t.ok[static_cast<int>(Op::exp)] = probe_host(Op::exp, exp_pts);
    t.ok[static_cast<int>(Op::log)] = probe_host(Op::log, log_pts);
    t.ok[static_cast<int>(Op::log2)] = probe_host(Op::log2, log_pts);
    t.ok[static_cast<int>(Op::log10)] = probe_host(Op::log10, log_pts);
    t.ok[static_cast<int>(Op::sin)] = probe_host(Op::sin, trig_pts);
    t.ok[static_cast<int>(Op::cos)] = probe_host(Op::cos, trig_pts);
    t.ok[static_cast<int>(Op::tan)] = probe_host(Op::tan, trig_pts);
    t.ok[static_cast<int>(Op::atan)] = probe_host(Op::atan, atan_pts);
    t.ok[static_cast<int>(Op::pow)] = probe_host_pow();
    return t;
  }();
  return table;
}

bool host_trusted(Op f) { return host_trust().ok[static_cast<int>(f)]; }

// Arguments whose image is itself a Binary64, kept exact instead of widened.
bool elem_exact(Op f, double a, double& ex) {
  switch (f) {
    case Op::exp:
      if (a == 0.0) { ex = 1.0; return true; }
      return false;
    case Op::log:
      if (a == 1.0) { ex = 0.0; return true; }
      return false;
    case Op::log2: {
      int e = 0;
      if (std::frexp(a, &e) == 0.5) { ex = e - 1; return true; }
      return false;
    }
    case Op::log10: {
      double p = 1.0;
      for (int k = 0; k <= 22; ++k, p *= 10.0)
        if (a == p) { ex = k; return true; }
      return false;
    }
    case Op::sin:
    case Op::tan:
    case Op::atan:
      if (a == 0.0) { ex = 0.0; return true; }
      return false;
    case Op::cos:
      if (a == 0.0) { ex = 1.0; return true; }
      return false;
    default:
      return false;
  }
}

struct PBound {
  double lo, hi;
};

// Directed image bounds of one finite in-domain point.
PBound elem_point(Op f, double a) {
  double ex;
  if (elem_exact(f, a, ex)) return {ex, ex};
  if (host_trusted(f)) {
    const double h = host_eval(f, a);
    return {fpk::next_down(h), fpk::next_up(h)};
  }
  const oracle::Iv pt{a, a};
  const auto enc = oracle::tightest_eval(f, std::span(&pt, 1));
  return {enc.lo, enc.hi};
}

PBound pow_point(double x, double y) {
  if (x == 1.0 || y == 0.0) return {1.0, 1.0};
  if (y == 1.0) return {x, x};
  if (y == 0.5)
    return {fpk::dir_sqrt(Dir::down, x), fpk::dir_sqrt(Dir::up, x)};
  if (y == 2.0)
    return {fpk::dir_mul(Dir::down, x, x), fpk::dir_mul(Dir::up, x, x)};
  if (y == -1.0)
    return {fpk::dir_div(Dir::down, 1.0, x), fpk::dir_div(Dir::up, 1.0, x)};
  if (host_trusted(Op::pow)) {
    const double h = std::pow(x, y);
    return {fpk::next_down(h), fpk::next_up(h)};
  }
  const oracle::Iv args[2] = {{x, x}, {y, y}};
  const auto enc = oracle::tightest_eval(Op::pow, args);
  return {enc.lo, enc.hi};
}

// Corner value of x^y over the closed domain, with limit conventions for
// zero and infinite corners.
PBound pow_corner(double x, double y) {
  if (x == 0.0) {
    if (y > 0.0) return {0.0, 0.0};
    if (y < 0.0) return {kInf, kInf};
    return {1.0, 1.0};
  }
  if (std::isinf(x)) {
    if (y > 0.0) return {kInf, kInf};
    if (y < 0.0) return {0.0, 0.0};
    return {1.0, 1.0};
  }
  if (std::isinf(y)) {
    if (x == 1.0) return {1.0, 1.0};
    const bool big = (x > 1.0) == (y > 0.0);
    return big ? PBound{kInf, kInf} : PBound{0.0, 0.0};
  }
  return pow_point(x, y);
}

double half_pi_up() {
  static const double v = oracle::pi_bounds().hi.to_double(bf::Rnd::up) * 0.5;
  return v;
}

}  // namespace

Interval exp(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  const double lo = x.lo() == -kInf
                        ? 0.0
                        : std::max(elem_point(Op::exp, x.lo()).lo, 0.0);
  const double hi = x.hi() == kInf ? kInf : elem_point(Op::exp, x.hi()).hi;
  return out(lo, hi);
}

namespace {

Interval log_family(Op f, const Interval& x) {
  if (x.is_empty() || x.hi() <= 0.0) return Interval::empty();
  const double a = std::max(x.lo(), 0.0);
  const double lo = a == 0.0 ? -kInf : elem_point(f, a).lo;
  const double hi = x.hi() == kInf ? kInf : elem_point(f, x.hi()).hi;
  return out(lo, hi);
}

}  // namespace

Interval log(const Interval& x) { return log_family(Op::log, x); }
Interval log2(const Interval& x) { return log_family(Op::log2, x); }
Interval log10(const Interval& x) { return log_family(Op::log10, x); }

Interval sin(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (x.lo() == -kInf || x.hi() == kInf) return out(-1.0, 1.0);
  const auto tp = oracle::trig_points(x.lo(), x.hi());
  const PBound a = elem_point(Op::sin, x.lo());
  const PBound b = elem_point(Op::sin, x.hi());
  const double lo = tp.sin_min ? -1.0 : std::max(std::min(a.lo, b.lo), -1.0);
  const double hi = tp.sin_max ? 1.0 : std::min(std::max(a.hi, b.hi), 1.0);
  return out(lo, hi);
}

Interval cos(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (x.lo() == -kInf || x.hi() == kInf) return out(-1.0, 1.0);
  const auto tp = oracle::trig_points(x.lo(), x.hi());
  const PBound a = elem_point(Op::cos, x.lo());
  const PBound b = elem_point(Op::cos, x.hi());
  const double lo = tp.cos_min ? -1.0 : std::max(std::min(a.lo, b.lo), -1.0);
  const double hi = tp.cos_max ? 1.0 : std::min(std::max(a.hi, b.hi), 1.0);
  return out(lo, hi);
}

Interval tan(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (x.lo() == -kInf || x.hi() == kInf) return Interval::entire();
  if (oracle::trig_points(x.lo(), x.hi()).pole) return Interval::entire();
  return out(elem_point(Op::tan, x.lo()).lo, elem_point(Op::tan, x.hi()).hi);
}

Interval atan(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  const double bound = half_pi_up();
  const double lo = x.lo() == -kInf
                        ? -bound
                        : std::max(elem_point(Op::atan, x.lo()).lo, -bound);
  const double hi = x.hi() == kInf
                        ? bound
                        : std::min(elem_point(Op::atan, x.hi()).hi, bound);
  return out(lo, hi);
}

Interval pow(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty() || x.hi() < 0.0) return Interval::empty();
  if (x.hi() == 0.0) {
    // Domain restricts x to the single point 0, admissible only for y > 0.
    return y.hi() > 0.0 ? out(0.0, 0.0) : Interval::empty();
  }
  const double xlo = std::max(x.lo(), 0.0);
  Reduce r;
  for (double cx : {xlo, x.hi()})
    for (double cy : {y.lo(), y.hi()}) {
      const PBound pb = pow_corner(cx, cy);
      r.add_lo(pb.lo);
      r.add_hi(pb.hi);
    }
  // Monotonicity in y flips at x = 1 and in x flips at y = 0; the only
  // interior or edge extremum value either sweep can contribute is 1.
  if ((xlo <= 1.0 && x.hi() >= 1.0) || (y.lo() <= 0.0 && y.hi() >= 0.0)) {
    r.add_lo(1.0);
    r.add_hi(1.0);
  }
  return out(std::max(r.lo, 0.0), r.hi);
}

// ---------------------------------------------------------------------------
// Set operations.

Interval intersection(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  const double lo = std::max(x.lo(), y.lo());
  const double hi = std::min(x.hi(), y.hi());
  if (lo > hi) return Interval::empty();
  return out(lo, hi);
}

Interval convex_hull(const Interval& x, const Interval& y) {
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  return out(std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

// ---------------------------------------------------------------------------
// Numeric queries.

double inf(const Interval& x) { return x.is_empty() ? kInf : x.lo(); }

double sup(const Interval& x) { return x.is_empty() ? -kInf : x.hi(); }

double mid(const Interval& x) {
  if (x.is_empty()) return kNan;
  const bool lo_inf = x.lo() == -kInf;
  const bool hi_inf = x.hi() == kInf;
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return -fpk::kMaxReal;
  if (hi_inf) return fpk::kMaxReal;
  return fpk::midpoint_rn(x.lo(), x.hi());
}

double rad(const Interval& x) {
  if (x.is_empty()) return kNan;
  const double m = mid(x);
  return std::max(fpk::dir_sub(Dir::up, m, x.lo()),
                  fpk::dir_sub(Dir::up, x.hi(), m));
}

double wid(const Interval& x) {
  if (x.is_empty()) return kNan;
  return fpk::dir_sub(Dir::up, x.hi(), x.lo());
}

double mag(const Interval& x) {
  if (x.is_empty()) return kNan;
  return std::max(std::fabs(x.lo()), std::fabs(x.hi()));
}

double mig(const Interval& x) {
  if (x.is_empty()) return kNan;
  if (x.lo() <= 0.0 && x.hi() >= 0.0) return 0.0;
  return std::min(std::fabs(x.lo()), std::fabs(x.hi()));
}

// ---------------------------------------------------------------------------
// Boolean queries.

bool is_empty(const Interval& x) { return x.is_empty(); }

bool is_entire(const Interval& x) {
  return !x.is_empty() && x.lo() == -kInf && x.hi() == kInf;
}

bool equal(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return x.is_empty() && y.is_empty();
  return x.lo() == y.lo() && x.hi() == y.hi();
}

bool subset(const Interval& x, const Interval& y) {
  if (x.is_empty()) return true;
  if (y.is_empty()) return false;
  return y.lo() <= x.lo() && x.hi() <= y.hi();
}

bool interior(const Interval& x, const Interval& y) {
  if (x.is_empty()) return true;
  if (y.is_empty()) return false;
  const bool lo_ok = y.lo() < x.lo() || (y.lo() == -kInf && x.lo() == -kInf);
  const bool hi_ok = x.hi() < y.hi() || (x.hi() == kInf && y.hi() == kInf);
  return lo_ok && hi_ok;
}

bool disjoint(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return true;
  return x.hi() < y.lo() || y.hi() < x.lo();
}

bool is_member(double v, const Interval& x) {
  return std::isfinite(v) && !x.is_empty() && x.lo() <= v && v <= x.hi();
}

// ---------------------------------------------------------------------------
// Text I/O.

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool ci_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) != b[i]) return false;
  return true;
}

struct NumBounds {
  bool ok = false;
  double lo = 0.0;
  double hi = 0.0;
};

// Directed Binary64 bounds of a well-formed but inexact hex literal,
// recovered through an exact big-integer significand.
NumBounds hex_directed(std::string_view t) {
  std::size_t i = 0;
  bool neg = false;
  if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
  i += 2;  // 0x
  bf::BigUint m;
  int kept = 0;
  long frac = 0, tail = 0;
  bool sticky = false, started = false;
  for (; i < t.size(); ++i) {
    const char ch = t[i];
    if (ch == '.') continue;
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
    else break;
    const bool after_point = t.find('.') < i;
    if (!started && d == 0) {
      if (after_point) ++frac;
      continue;
    }
    started = true;
    if (kept < 40) {
      m = add(shl(m, 4), bf::BigUint::from_u64(static_cast<uint64_t>(d)));
      ++kept;
      if (after_point) ++frac;
    } else if (after_point) {
      sticky = sticky || d != 0;
    } else {
      tail += 4;
      sticky = sticky || d != 0;
    }
  }
  ++i;  // p
  bool eneg = false;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) eneg = t[i++] == '-';
  long ev = 0;
  for (; i < t.size(); ++i)
    if (ev < (1l << 28)) ev = ev * 10 + (t[i] - '0');
  const int64_t e2 = (eneg ? -ev : ev) + tail - 4 * frac;

  const bf::BigFloat lo_bf = bf::BigFloat::from_parts(false, m, e2);
  const bf::BigFloat hi_bf =
      sticky ? bf::BigFloat::from_parts(
                   false, add(m, bf::BigUint::from_u64(1)), e2)
             : lo_bf;
  NumBounds nb;
  nb.ok = true;
  if (neg) {
    nb.lo = hi_bf.negated().to_double(bf::Rnd::down);
    nb.hi = lo_bf.negated().to_double(bf::Rnd::up);
  } else {
    nb.lo = lo_bf.to_double(bf::Rnd::down);
    nb.hi = hi_bf.to_double(bf::Rnd::up);
  }
  return nb;
}

NumBounds parse_number(std::string_view t) {
  t = trim(t);
  if (t.empty()) return {};
  std::string_view body = t;
  double sgn = 1.0;
  if (body.front() == '+' || body.front() == '-') {
    if (body.front() == '-') sgn = -1.0;
    body.remove_prefix(1);
  }
  if (ci_equal(body, "inf") || ci_equal(body, "infinity"))
    return {true, sgn * kInf, sgn * kInf};
  if (body.size() > 1 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    const auto hp = fpk::hex_to_f64(t);
    if (hp.status == fpk::HexParse::Status::ok)
      return {true, hp.value, hp.value};
    if (hp.status == fpk::HexParse::Status::inexact) return hex_directed(t);
    return {};
  }
  const auto dp = bf::parse_decimal(t);
  if (!dp.ok) return {};
  return {true, dp.lo, dp.hi};
}

}  // namespace

IntervalResult text_to_interval(std::string_view text) {
  const auto bad = [] {
    return IntervalResult{Interval::empty(), Signal::undefined_operation};
  };
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return bad();
  s = s.substr(1, s.size() - 2);
  const std::size_t comma = s.find(',');
  if (comma == std::string_view::npos) {
    const std::string_view body = trim(s);
    if (ci_equal(body, "empty")) return {Interval::empty(), Signal::none};
    if (ci_equal(body, "entire")) return {Interval::entire(), Signal::none};
    const NumBounds nb = parse_number(body);
    if (!nb.ok) return bad();
    return make_interval(nb.lo, nb.hi);
  }
  if (s.find(',', comma + 1) != std::string_view::npos) return bad();
  const NumBounds lo = parse_number(s.substr(0, comma));
  const NumBounds hi = parse_number(s.substr(comma + 1));
  if (!lo.ok || !hi.ok) return bad();
  return make_interval(lo.lo, hi.hi);
}

std::string interval_to_text(const Interval& x, TextForm form) {
  if (x.is_empty()) return "[empty]";
  if (is_entire(x)) return "[entire]";
  const auto render = [form](double v) -> std::string {
    if (form == TextForm::hex) return fpk::f64_to_hex(v);
    if (v == kInf) return "infinity";
    if (v == -kInf) return "-infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  if (x.lo() == x.hi()) return "[" + render(x.lo()) + "]";
  return "[" + render(x.lo()) + "," + render(x.hi()) + "]";
}

// ---------------------------------------------------------------------------
// Dispatch.

Interval eval_interval_op(Op op, std::span<const Interval> args) {
  assert(static_cast<int>(args.size()) == op_arity(op));
  switch (op) {
    case Op::neg:          return neg(args[0]);
    case Op::add:          return add(args[0], args[1]);
    case Op::sub:          return sub(args[0], args[1]);
    case Op::mul:          return mul(args[0], args[1]);
    case Op::div:          return div(args[0], args[1]);
    case Op::recip:        return recip(args[0]);
    case Op::sqr:          return sqr(args[0]);
    case Op::sqrt:         return sqrt(args[0]);
    case Op::fma:          return fma(args[0], args[1], args[2]);
    case Op::exp:          return exp(args[0]);
    case Op::log:          return log(args[0]);
    case Op::log2:         return log2(args[0]);
    case Op::log10:        return log10(args[0]);
    case Op::sin:          return sin(args[0]);
    case Op::cos:          return cos(args[0]);
    case Op::tan:          return tan(args[0]);
    case Op::atan:         return atan(args[0]);
    case Op::pow:          return pow(args[0], args[1]);
    case Op::intersection: return intersection(args[0], args[1]);
    case Op::convex_hull:  return convex_hull(args[0], args[1]);
    default:               std::abort();
  }
}

double eval_numeric_op(Op op, const Interval& x) {
  switch (op) {
    case Op::inf: return inf(x);
    case Op::sup: return sup(x);
    case Op::mid: return mid(x);
    case Op::rad: return rad(x);
    case Op::wid: return wid(x);
    case Op::mag: return mag(x);
    case Op::mig: return mig(x);
    default:      std::abort();
  }
}

bool eval_bool_op(Op op, std::span<const Interval> args) {
  switch (op) {
    case Op::is_empty:  return is_empty(args[0]);
    case Op::is_entire: return is_entire(args[0]);
    case Op::equal:     return equal(args[0], args[1]);
    case Op::subset:    return subset(args[0], args[1]);
    case Op::interior:  return interior(args[0], args[1]);
    case Op::disjoint:  return disjoint(args[0], args[1]);
    default:            std::abort();
  }
}

}  // namespace itlconform
