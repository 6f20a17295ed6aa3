#include "itlconform/generator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <span>

#include "itlconform/decoration.hpp"
#include "itlconform/fpkernel.hpp"
#include "itlconform/oracle.hpp"

namespace itlconform::gen {
namespace {

namespace fpk = itlconform::fpk;

constexpr double kInf = std::numeric_limits<double>::infinity();

uint64_t fnv64(std::string_view s, uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// literal rendering

std::string num_text(double v) {
  if (std::isnan(v)) return "nan";
  if (v == kInf) return "infinity";
  if (v == -kInf) return "-infinity";
  return fpk::f64_to_hex(v);
}

// Integers and halves in plain decimal, for readable easy cases.
std::string dec_text(double v) {
  double a = std::fabs(v);
  long long twice = static_cast<long long>(a * 2.0);
  std::string s = std::signbit(v) ? "-" : "";
  s += std::to_string(twice / 2);
  s += (twice % 2) ? ".5" : ".0";
  return s;
}

bool dec_friendly(double v) {
  if (!std::isfinite(v)) return false;
  double t = v * 2.0;
  return std::fabs(v) <= 4096.0 && t == std::floor(t);
}

std::string endpoint_text(double v, bool decimal) {
  if (decimal && dec_friendly(v)) return dec_text(v);
  return num_text(v);
}

itl::Literal iv_lit(const Interval& x, bool decimal = false) {
  itl::Literal lit;
  lit.kind = itl::Literal::Kind::interval;
  if (x.is_empty()) {
    lit.text = "[ empty ]";
  } else if (x.lo() == -kInf && x.hi() == kInf) {
    lit.text = "[ entire ]";
  } else if (x.lo() == x.hi()) {
    lit.text = "[ " + endpoint_text(x.lo(), decimal) + " ]";
  } else {
    lit.text = "[ " + endpoint_text(x.lo(), decimal) + ", " +
               endpoint_text(x.hi(), decimal) + " ]";
  }
  return lit;
}

itl::Literal dec_lit(const DecoratedInterval& x) {
  itl::Literal lit;
  lit.kind = itl::Literal::Kind::decorated_interval;
  if (is_nai(x)) {
    lit.text = "[ nai ]";
  } else {
    lit.text = iv_lit(x.interval).text + "_" + std::string(decoration_name(x.dec));
  }
  return lit;
}

itl::Literal num_lit(double v) {
  return {itl::Literal::Kind::number, num_text(v)};
}

itl::Literal bool_lit(bool b) {
  return {itl::Literal::Kind::boolean, b ? "true" : "false"};
}

itl::Literal signal_lit() {
  return {itl::Literal::Kind::signal, "undefined_operation"};
}

itl::Literal raw_iv_lit(std::string text) {
  return {itl::Literal::Kind::interval, std::move(text)};
}

// ---------------------------------------------------------------------------
// expected-value derivation

struct Derived {
  bool ok = false;
  Interval value;
  const char* cert = "oracle";
  int64_t q = 0;
};

Derived derive_interval(Op op, std::span<const Interval> xs) {
  if (op == Op::intersection || op == Op::convex_hull) {
    return {true, eval_interval_op(op, xs), "exact", 0};
  }
  for (const Interval& x : xs)
    if (x.is_empty()) return {true, Interval::empty(), "exact", 0};

  std::vector<oracle::Iv> ivs;
  ivs.reserve(xs.size());
  for (const Interval& x : xs) ivs.push_back({x.lo(), x.hi()});
  oracle::Enclosure53 e = oracle::tightest_eval(op, ivs);
  if (e.empty) return {e.certified, Interval::empty(), "oracle", e.q_final};
  if (!e.certified) return {false, Interval::empty(), "oracle", e.q_final};
  IntervalResult r = make_interval(e.lo, e.hi);
  if (r.signal != Signal::none) return {false, Interval::empty(), "oracle", e.q_final};
  return {true, r.value, "oracle", e.q_final};
}

// ---------------------------------------------------------------------------
// per-cell generation context

struct Ctx {
  std::string category;
  Op op;
  uint64_t plan_seed;
  int limit;
  std::mt19937_64 rng;
  std::vector<itl::Assertion> assertions;
  std::vector<std::string> prov;  // cert=.. q=.. per assertion
  std::vector<std::string>* dropped;

  bool full() const { return static_cast<int>(assertions.size()) >= limit; }

  void push(itl::Assertion a, const char* cert, int64_t q) {
    if (full()) return;
    a.op = std::string(op_name(op));
    assertions.push_back(std::move(a));
    prov.push_back(std::string("cert=") + cert + " q=" + std::to_string(q));
  }

  void drop(std::string_view inputs, int64_t q) {
    dropped->push_back("dropped op=" + std::string(op_name(op)) +
                       " category=" + category +
                       " seed=" + std::to_string(plan_seed) +
                       " reason=uncertified q=" + std::to_string(q) +
                       " inputs=" + std::string(inputs));
  }

  void interval_assert(std::span<const Interval> xs, itl::AssertMode mode,
                       bool decimal = false) {
    if (full()) return;
    itl::Assertion a;
    for (const Interval& x : xs) a.inputs.push_back(iv_lit(x, decimal));
    Derived d = derive_interval(op, xs);
    if (!d.ok) {
      std::string joined;
      for (const itl::Literal& lit : a.inputs) joined += lit.text;
      drop(joined, d.q);
      return;
    }
    a.expected.push_back(iv_lit(d.value));
    a.mode = mode;
    push(std::move(a), d.cert, d.q);
  }

  // Inputs with hand-chosen spellings, already in canonical "[ a, b ]" form;
  // values are re-derived from the texts.
  void spelled_assert(std::vector<std::string> input_texts, itl::AssertMode mode) {
    if (full()) return;
    itl::Assertion a;
    std::vector<Interval> xs;
    for (std::string& t : input_texts) {
      IntervalResult r = text_to_interval(t);
      if (r.signal != Signal::none) return;
      xs.push_back(r.value);
      a.inputs.push_back(raw_iv_lit(t));
    }
    Derived d = derive_interval(op, xs);
    if (!d.ok) return;
    a.expected.push_back(iv_lit(d.value));
    a.mode = mode;
    push(std::move(a), d.cert, d.q);
  }

  void verbatim_assert(std::vector<itl::Literal> inputs,
                       std::vector<itl::Literal> expected, itl::AssertMode mode) {
    if (full()) return;
    itl::Assertion a;
    a.inputs = std::move(inputs);
    a.expected = std::move(expected);
    a.mode = mode;
    push(std::move(a), "oracle", 0);
  }

  // The bare part of the expectation comes from the evaluator; the
  // decoration comes from the propagation rules. The propagation result is
  // computed on the reference bare value, whose domain and boundedness
  // classification agrees with the tightest one.
  void decorated_assert(std::span<const DecoratedInterval> xs,
                        itl::AssertMode mode) {
    if (full()) return;
    itl::Assertion a;
    for (const DecoratedInterval& x : xs) a.inputs.push_back(dec_lit(x));
    DecoratedInterval want = dec_op(op, xs);
    const char* cert = "exact";
    int64_t q = 0;
    bool any_ill = false;
    for (const DecoratedInterval& x : xs) any_ill |= x.dec == Decoration::ill;
    if (!any_ill) {
      std::vector<Interval> bare;
      for (const DecoratedInterval& x : xs) bare.push_back(x.interval);
      Derived d = derive_interval(op, bare);
      if (!d.ok) {
        std::string joined;
        for (const itl::Literal& lit : a.inputs) joined += lit.text;
        drop(joined, d.q);
        return;
      }
      want.interval = d.value;
      cert = d.cert;
      q = d.q;
    }
    a.expected.push_back(dec_lit(want));
    a.mode = mode;
    push(std::move(a), cert, q);
  }

  void numeric_assert(const Interval& x, bool decimal = false) {
    if (full()) return;
    itl::Assertion a;
    a.inputs.push_back(iv_lit(x, decimal));
    a.expected.push_back(num_lit(eval_numeric_op(op, x)));
    push(std::move(a), "structural", 0);
  }

  void bool_assert(std::span<const Interval> xs, bool decimal = false) {
    if (full()) return;
    itl::Assertion a;
    for (const Interval& x : xs) a.inputs.push_back(iv_lit(x, decimal));
    a.expected.push_back(bool_lit(eval_bool_op(op, xs)));
    push(std::move(a), "structural", 0);
  }

  void member_assert(double pt, const Interval& x, bool decimal = false) {
    if (full()) return;
    itl::Assertion a;
    a.inputs.push_back(num_lit(pt));
    if (decimal && dec_friendly(pt)) a.inputs.back().text = dec_text(pt);
    a.inputs.push_back(iv_lit(x, decimal));
    a.expected.push_back(bool_lit(is_member(pt, x)));
    push(std::move(a), "structural", 0);
  }

  void text_assert(std::string literal_text) {
    if (full()) return;
    itl::Assertion a;
    a.inputs.push_back(raw_iv_lit(literal_text));
    IntervalResult r = text_to_interval(literal_text);
    a.expected.push_back(iv_lit(r.value));
    if (r.signal != Signal::none) a.expected.push_back(signal_lit());
    push(std::move(a), "oracle", 0);
  }

  // helpers over the cell rng
  double pick(std::span<const double> pool) {
    return pool[rng() % pool.size()];
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  double rand_scaled(int emin, int emax) {
    uint64_t bits = rng() & ((uint64_t{1} << 52) - 1);
    double mant = 1.0 + static_cast<double>(bits) * 0x1p-52;
    double v = std::ldexp(mant, uniform_int(emin, emax));
    return (rng() & 1) ? -v : v;
  }
  Interval around(double center, double spread) {
    double a = center - uniform(0.0, spread);
    double b = center + uniform(0.0, spread);
    return make_interval(std::min(a, b), std::max(a, b)).value;
  }
};

Interval iv(double lo, double hi) { return make_interval(lo, hi).value; }

// ---------------------------------------------------------------------------
// easy

const std::vector<Interval>& easy_pool() {
  static const std::vector<Interval> pool = {
      iv(0.0, 0.0),  iv(1.0, 1.0),   iv(1.0, 2.0),  iv(-1.0, 1.0),
      iv(0.5, 1.5),  iv(-2.5, -0.5), iv(2.0, 3.0),  iv(0.0, 2.0),
      iv(-4.0, -1.0), iv(1.0, 4.0),  iv(3.0, 5.0),  iv(-3.0, 2.0),
      iv(0.5, 0.5),  iv(-2.0, 4.0),  iv(6.0, 8.0),
  };
  return pool;
}

const std::vector<Interval>& positive_pool() {
  static const std::vector<Interval> pool = {
      iv(0.5, 1.5), iv(1.0, 2.0), iv(2.0, 3.0), iv(1.0, 1.0), iv(4.0, 9.0),
      iv(0.5, 8.0), iv(3.0, 5.0), iv(2.0, 2.0), iv(1.5, 6.5), iv(0.5, 0.5),
      iv(16.0, 81.0),
  };
  return pool;
}

Interval pick_iv(Ctx& c, const std::vector<Interval>& pool) {
  return pool[c.rng() % pool.size()];
}

void gen_easy(Ctx& c) {
  switch (op_kind(c.op)) {
    case OpKind::arith:
    case OpKind::set_op: {
      if (c.op == Op::add) {
        c.verbatim_assert({raw_iv_lit("[ -1.0, 1.0 ]"), raw_iv_lit("[ empty ]")},
                          {raw_iv_lit("[ empty ]")}, itl::AssertMode::tightest);
        c.verbatim_assert(
            {raw_iv_lit("[ 1.0, 2.0 ]"), raw_iv_lit("[ 3.0, infinity ]")},
            {raw_iv_lit("[ 4.0, infinity ]")}, itl::AssertMode::tightest);
        c.verbatim_assert(
            {raw_iv_lit("[ 1.0, infinity ]"), raw_iv_lit("[ -infinity, 4.0 ]")},
            {raw_iv_lit("[ entire ]")}, itl::AssertMode::tightest);
        c.verbatim_assert(
            {raw_iv_lit("[ 0X1.FFFFFFFFFFFFP+0 ]"),
             raw_iv_lit("[ 0X1.999999999999AP-4 ]")},
            {raw_iv_lit("[ 0X1.0CCCCCCCCCCC4P+1, 0X1.0CCCCCCCCCCC5P+1 ]")},
            itl::AssertMode::tightest);
      }
      if (c.op == Op::div) {
        c.verbatim_assert({raw_iv_lit("[ empty ]"), raw_iv_lit("[ empty ]")},
                          {raw_iv_lit("[ empty ]")}, itl::AssertMode::tightest);
        c.verbatim_assert({raw_iv_lit("[ -30.0, 15.0 ]"), raw_iv_lit("[ entire ]")},
                          {raw_iv_lit("[ entire ]")}, itl::AssertMode::tightest);
      }
      while (!c.full()) {
        std::vector<Interval> xs;
        const std::vector<Interval>& pool =
            c.op == Op::sqrt ? positive_pool() : easy_pool();
        for (int i = 0; i < op_arity(c.op); ++i) xs.push_back(pick_iv(c, pool));
        c.interval_assert(xs, itl::AssertMode::tightest, true);
      }
      break;
    }
    case OpKind::elem: {
      while (!c.full()) {
        std::vector<Interval> xs;
        bool needs_pos = c.op == Op::log || c.op == Op::log2 || c.op == Op::log10 ||
                         c.op == Op::pow;
        xs.push_back(pick_iv(c, needs_pos ? positive_pool() : easy_pool()));
        if (c.op == Op::pow) {
          static const std::vector<Interval> ys = {
              iv(2.0, 2.0),  iv(0.5, 0.5),  iv(-1.0, -1.0), iv(2.0, 3.0),
              iv(0.0, 1.0),  iv(1.0, 1.0),  iv(0.25, 0.25),
          };
          xs.push_back(pick_iv(c, ys));
        }
        c.interval_assert(xs, itl::AssertMode::accurate, true);
      }
      break;
    }
    case OpKind::numeric: {
      while (!c.full()) c.numeric_assert(pick_iv(c, easy_pool()), true);
      break;
    }
    case OpKind::boolean: {
      while (!c.full()) {
        if (c.op == Op::is_member) {
          static const double pts[] = {0.0, 0.5, 1.0, 1.5, 2.0, -1.0, 3.5, 7.0};
          c.member_assert(pts[c.rng() % 8], pick_iv(c, easy_pool()), true);
        } else {
          std::vector<Interval> xs = {pick_iv(c, easy_pool())};
          if (op_arity(c.op) == 2) xs.push_back(pick_iv(c, easy_pool()));
          c.bool_assert(xs, true);
        }
      }
      break;
    }
    case OpKind::text: {
      static const char* forms[] = {
          "[ 1.0, 2.0 ]", "[ -0.5 ]",        "[ empty ]",
          "[ entire ]",   "[ 2.0 ]",         "[ -4.0, -1.5 ]",
          "[ 0.25, 8.0 ]", "[ -2.0, 2.0 ]",  "[ 10.0, 100.0 ]",
          "[ 0.0 ]",
      };
      for (const char* f : forms) c.text_assert(f);
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// signed-zero

void gen_signed_zero(Ctx& c) {
  auto zero = [&]() { return (c.rng() & 1) ? std::string("0.0") : std::string("-0.0"); };
  switch (op_kind(c.op)) {
    case OpKind::arith:
    case OpKind::set_op: {
      while (!c.full()) {
        std::string a =
            "[ " + zero() + ", " + dec_text(c.uniform_int(1, 4)) + " ]";
        std::string b =
            "[ " + dec_text(-c.uniform_int(1, 3)) + ", " + zero() + " ]";
        std::string z = "[ " + zero() + ", " + zero() + " ]";
        switch (c.uniform_int(0, 3)) {
          case 0: {
            std::vector<std::string> in = {a, b};
            in.resize(op_arity(c.op), z);
            c.spelled_assert(in, itl::AssertMode::tightest);
            break;
          }
          case 1: {
            std::vector<std::string> in = {z, a};
            in.resize(op_arity(c.op), b);
            c.spelled_assert(in, itl::AssertMode::tightest);
            break;
          }
          case 2: {
            std::vector<std::string> in = {b, z};
            in.resize(op_arity(c.op), a);
            c.spelled_assert(in, itl::AssertMode::tightest);
            break;
          }
          default: {
            std::vector<std::string> in = {a, a};
            in.resize(op_arity(c.op), z);
            c.spelled_assert(in, itl::AssertMode::tightest);
            break;
          }
        }
      }
      break;
    }
    case OpKind::numeric: {
      while (!c.full()) {
        static const Interval shapes[] = {
            iv(0.0, 0.0), iv(0.0, 1.0), iv(-1.0, 0.0), iv(-2.0, 0.0), iv(0.0, 4.0),
        };
        c.numeric_assert(shapes[c.rng() % 5], true);
      }
      break;
    }
    case OpKind::boolean: {
      while (!c.full()) {
        if (c.op == Op::is_member) {
          c.member_assert((c.rng() & 1) ? 0.0 : -0.0,
                          (c.rng() & 1) ? iv(0.0, 1.0) : iv(1.0, 2.0), true);
        } else {
          static const Interval shapes[] = {
              iv(0.0, 0.0), iv(0.0, 1.0), iv(-1.0, 0.0), iv(-1.0, 1.0),
          };
          std::vector<Interval> xs = {shapes[c.rng() % 4]};
          if (op_arity(c.op) == 2) xs.push_back(shapes[c.rng() % 4]);
          c.bool_assert(xs, true);
        }
      }
      break;
    }
    default:
      break;
  }
}

// ---------------------------------------------------------------------------
// infinity

void gen_infinity(Ctx& c) {
  auto shape = [&](bool positive_only) {
    double v = positive_only ? std::fabs(c.rand_scaled(-8, 8)) : c.rand_scaled(-8, 8);
    switch (c.uniform_int(0, 2)) {
      case 0: return positive_only && (c.rng() & 1) ? iv(0.0, kInf) : iv(v, kInf);
      case 1: return positive_only ? iv(0.0, std::fabs(v)) : iv(-kInf, v);
      default: return positive_only ? iv(0.0, kInf) : Interval::entire();
    }
  };
  switch (op_kind(c.op)) {
    case OpKind::arith:
    case OpKind::set_op: {
      while (!c.full()) {
        std::vector<Interval> xs;
        for (int i = 0; i < op_arity(c.op); ++i)
          xs.push_back((c.rng() & 1) ? shape(false)
                                     : c.around(c.rand_scaled(-4, 4), 2.0));
        c.interval_assert(xs, itl::AssertMode::tightest);
      }
      break;
    }
    case OpKind::elem: {
      bool needs_pos = c.op == Op::log || c.op == Op::log2 || c.op == Op::log10;
      while (!c.full()) {
        std::vector<Interval> xs = {shape(needs_pos)};
        if (c.op == Op::pow) {
          xs[0] = iv(0.0, kInf);
          if (c.rng() & 1) xs[0] = iv(std::fabs(c.rand_scaled(-2, 2)), kInf);
          xs.push_back((c.rng() & 1) ? iv(1.0, 2.0) : iv(-2.0, kInf));
        }
        c.interval_assert(xs, itl::AssertMode::accurate);
      }
      break;
    }
    case OpKind::numeric: {
      while (!c.full()) {
        static const Interval shapes[] = {
            iv(0.0, kInf), iv(-kInf, 0.0), iv(1.0, kInf), iv(-kInf, -2.5),
            Interval::entire(),
        };
        c.numeric_assert(shapes[c.rng() % 5]);
      }
      break;
    }
    case OpKind::boolean: {
      while (!c.full()) {
        static const Interval shapes[] = {
            iv(0.0, kInf), iv(-kInf, 0.0), Interval::entire(), iv(1.0, 2.0),
            iv(-kInf, kInf),
        };
        if (c.op == Op::is_member) {
          double pt = (c.rng() & 1) ? kInf : -kInf;
          c.member_assert(pt, shapes[c.rng() % 5]);
        } else {
          std::vector<Interval> xs = {shapes[c.rng() % 5]};
          if (op_arity(c.op) == 2) xs.push_back(shapes[c.rng() % 5]);
          c.bool_assert(xs);
        }
      }
      break;
    }
    default:
      break;
  }
}

// ---------------------------------------------------------------------------
// nan

void gen_nan(Ctx& c) {
  if (c.op == Op::text_to_interval) {
    static const char* probes[] = {
        "[ nan ]", "[ nan, 1.0 ]", "[ 1.0, nan ]", "[ -nan ]",
        "[ nan, nan ]", "[ -nan, nan ]",
    };
    for (const char* p : probes) c.text_assert(p);
    return;
  }
  if (c.op == Op::is_member) {
    static const Interval shapes[] = {
        iv(1.0, 2.0), Interval::entire(), Interval::empty(), iv(0.0, kInf),
    };
    for (const Interval& x : shapes)
      c.member_assert(std::numeric_limits<double>::quiet_NaN(), x);
    return;
  }
  if (op_kind(c.op) == OpKind::numeric) {
    c.numeric_assert(Interval::empty());
    while (!c.full()) c.numeric_assert(pick_iv(c, easy_pool()), true);
  }
}

// ---------------------------------------------------------------------------
// overflow

void gen_overflow(Ctx& c) {
  const double max = fpk::kMaxReal;
  const double big = 0x1p1000;
  if (c.op == Op::mul) {
    Interval a = iv(0.0, max);
    c.interval_assert(std::vector<Interval>{a, a}, itl::AssertMode::tightest);
    Interval b = iv(0.75 * max, max);
    c.interval_assert(std::vector<Interval>{b, b}, itl::AssertMode::tightest);
  }
  while (!c.full()) {
    switch (c.op) {
      case Op::add: {
        Interval a = iv(std::fabs(c.rand_scaled(1020, 1023)), max);
        c.interval_assert(std::vector<Interval>{a, a}, itl::AssertMode::tightest);
        break;
      }
      case Op::sub: {
        Interval a = iv(-max, -std::fabs(c.rand_scaled(1020, 1023)));
        Interval b = iv(std::fabs(c.rand_scaled(1020, 1023)), max);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::mul: {
        Interval a = iv(std::fabs(c.rand_scaled(512, 600)), 0x1p700);
        Interval b = iv(std::fabs(c.rand_scaled(500, 524)), 0x1p640);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::div: {
        Interval a = iv(std::fabs(c.rand_scaled(500, 700)), 0x1p710);
        Interval b = iv(0x1p-1070, std::fabs(c.rand_scaled(-1060, -1040)));
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::sqr: {
        Interval a = iv(std::fabs(c.rand_scaled(514, 700)), 0x1p712);
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::tightest);
        break;
      }
      case Op::fma: {
        Interval a = iv(big, 0x1p1010);
        Interval b = iv(std::fabs(c.rand_scaled(10, 23)), 0x1p40);
        Interval d = iv(-std::fabs(c.rand_scaled(0, 100)), big);
        c.interval_assert(std::vector<Interval>{a, b, d}, itl::AssertMode::tightest);
        break;
      }
      case Op::recip: {
        Interval a = iv(0x1p-1074, std::fabs(c.rand_scaled(-1074, -1060)));
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::tightest);
        break;
      }
      case Op::exp: {
        double lo = 709.0 + c.uniform(0.0, 2.5);
        Interval a = iv(lo, lo + c.uniform(0.25, 2.0));
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::accurate);
        break;
      }
      case Op::pow: {
        Interval x = iv(2.0, 2.0 + c.uniform_int(0, 2));
        double y = 1090.0 + c.uniform_int(0, 40);
        c.interval_assert(std::vector<Interval>{x, iv(y, y)},
                          itl::AssertMode::accurate);
        break;
      }
      default:
        return;
    }
  }
}

// ---------------------------------------------------------------------------
// subnormal

void gen_subnormal(Ctx& c) {
  const double minsub = fpk::kMinSubnormal;
  const double minnorm = fpk::kMinNormal;
  while (!c.full()) {
    switch (c.op) {
      case Op::add: {
        Interval a = iv(minsub, std::ldexp(minsub, c.uniform_int(1, 40)));
        Interval b = iv(-std::ldexp(minsub, c.uniform_int(0, 20)), minsub);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::sub: {
        Interval a = iv(minnorm, fpk::next_up(minnorm));
        Interval b = iv(std::ldexp(minsub, c.uniform_int(0, 30)), minnorm);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::mul: {
        Interval a = iv(std::fabs(c.rand_scaled(-540, -510)), 0x1p-500);
        Interval b = iv(std::fabs(c.rand_scaled(-540, -512)), 0x1p-505);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::div: {
        Interval a = iv(std::fabs(c.rand_scaled(-600, -520)), 0x1p-519);
        Interval b = iv(std::fabs(c.rand_scaled(500, 523)), 0x1p524);
        c.interval_assert(std::vector<Interval>{a, b}, itl::AssertMode::tightest);
        break;
      }
      case Op::sqr: {
        Interval a = iv(std::fabs(c.rand_scaled(-537, -512)), 0x1p-511);
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::tightest);
        break;
      }
      case Op::sqrt: {
        Interval a = iv(minsub, std::ldexp(minsub, c.uniform_int(1, 52)));
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::tightest);
        break;
      }
      case Op::recip: {
        Interval a = iv(std::fabs(c.rand_scaled(1022, 1023)), fpk::kMaxReal);
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::tightest);
        break;
      }
      case Op::exp: {
        double lo = -746.0 + c.uniform(0.0, 1.5);
        Interval a = iv(lo, lo + c.uniform(0.1, 1.0));
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::accurate);
        break;
      }
      case Op::log:
      case Op::log2:
      case Op::log10: {
        Interval a = iv(std::ldexp(minsub, c.uniform_int(0, 8)),
                        std::ldexp(minnorm, c.uniform_int(0, 4)));
        c.interval_assert(std::vector<Interval>{a}, itl::AssertMode::accurate);
        break;
      }
      default:
        return;
    }
  }
}

// ---------------------------------------------------------------------------
// binade

void gen_binade(Ctx& c) {
  while (!c.full()) {
    int k = c.uniform_int(-300, 300);
    double p = std::ldexp(1.0, k);
    Interval shapes[] = {
        iv(fpk::next_down(p), p),
        iv(p, fpk::next_up(p)),
        iv(fpk::next_down(p), fpk::next_up(p)),
        iv(p - std::ldexp(1.0, k - 53), p + std::ldexp(1.0, k - 52)),
    };
    std::vector<Interval> xs;
    for (int i = 0; i < op_arity(c.op); ++i) {
      Interval s = shapes[c.rng() % 4];
      xs.push_back((c.rng() & 1) ? s : iv(-s.hi(), -s.lo()));
    }
    c.interval_assert(xs, itl::AssertMode::tightest);
  }
}

// ---------------------------------------------------------------------------
// trig-reduction

void gen_trig(Ctx& c) {
  std::vector<int64_t> ks = {1, 2, 3};
  while (static_cast<int>(ks.size()) * 4 < c.limit)
    ks.push_back(c.uniform_int(4, 1000000));
  for (int64_t k : ks) {
    double m = oracle::pi_half_multiple_rn(k);
    double below = fpk::next_down(m);
    double above = fpk::next_up(m);
    for (double p : {below, m, above})
      c.interval_assert(std::vector<Interval>{iv(p, p)}, itl::AssertMode::accurate);
    c.interval_assert(std::vector<Interval>{iv(below, above)},
                      itl::AssertMode::accurate);
  }
}

// ---------------------------------------------------------------------------
// io-forms

void gen_io(Ctx& c) {
  // Three field lengths for each family of spellings.
  static const char* fixed[] = {
      "[ 0.5 ]", "[ 0.500 ]", "[ 0.5000000000000000000000 ]",
      "[ 0.1 ]", "[ 0.10000000000000001 ]",
      "[ 0.100000000000000000000000001 ]",
      "[ 0x1.8p+0 ]", "[ 0x1.80p+0 ]", "[ 0x1.8000000000000000p+0 ]",
      "[ 1e2 ]", "[ 10.0e1 ]", "[ 100.000000000000000000 ]",
      "[ empty ]", "[ Empty ]", "[ EMPTY ]",
      "[ entire ]", "[ Entire ]", "[ ENTIRE ]",
      "[ -infinity, 2.0 ]", "[ -inf, 2.0 ]",
      "[ 1.25, infinity ]", "[ 1.25, inf ]",
      "[ 4.0, 3.0 ]", "[ infinity ]", "[ infinity, -infinity ]",
      "[ -infinity, -infinity ]",
      "[ 0x1.0000000000000800000000000001p+0 ]",
      "[ -0x1.0000000000000800000000000001p+0 ]",
  };
  for (const char* f : fixed) c.text_assert(f);
  while (!c.full()) {
    int len = (c.uniform_int(0, 2) == 0) ? 8 : (c.uniform_int(0, 1) ? 17 : 26);
    std::string digits;
    for (int i = 0; i < len; ++i)
      digits += static_cast<char>('0' + c.uniform_int(0, 9));
    std::string lit = std::string(c.rng() & 1 ? "-" : "") + "0." + digits;
    if (c.rng() & 1) lit += "e" + std::to_string(c.uniform_int(-20, 20));
    c.text_assert("[ " + lit + " ]");
  }
}

// ---------------------------------------------------------------------------
// decorations

void gen_decorations(Ctx& c) {
  static const std::vector<Interval> shapes = {
      iv(1.0, 2.0),  iv(0.25, 0.75), iv(-1.0, 4.0), iv(0.0, 4.0),
      iv(-4.0, -1.0), iv(0.0, 0.0),  iv(2.0, 3.0),  iv(1.0, kInf),
      iv(0x1p1000, 0x1p1023), iv(710.0, 711.0), iv(-2.0, 0.0),
  };
  static const Decoration labels[] = {Decoration::com, Decoration::dac,
                                      Decoration::def, Decoration::trv};
  itl::AssertMode mode = op_kind(c.op) == OpKind::elem ? itl::AssertMode::accurate
                                                       : itl::AssertMode::tightest;
  bool nai_done = false;
  while (!c.full()) {
    if (!nai_done && op_arity(c.op) >= 2) {
      nai_done = true;
      std::vector<DecoratedInterval> xs(op_arity(c.op),
                                        new_dec(shapes[0]));
      xs[0] = nai();
      c.decorated_assert(xs, mode);
      continue;
    }
    std::vector<DecoratedInterval> xs;
    for (int i = 0; i < op_arity(c.op); ++i) {
      Interval x = shapes[c.rng() % shapes.size()];
      Decoration cap = new_dec(x).dec;
      Decoration want = labels[c.rng() % 4];
      xs.push_back({x, std::min(cap, want)});
    }
    c.decorated_assert(xs, mode);
  }
}

// ---------------------------------------------------------------------------
// fuzz

Interval random_interval(Ctx& c, bool bounded, bool positive, int emax) {
  auto endpoint = [&]() -> double {
    uint64_t roll = c.rng() & 15;
    if (roll == 0) return 0.0;
    if (!bounded && roll == 1) return (c.rng() & 1) ? kInf : -kInf;
    double v = c.rand_scaled(-emax, emax);
    return positive ? std::fabs(v) : v;
  };
  for (;;) {
    double a = endpoint(), b = endpoint();
    IntervalResult r = make_interval(std::min(a, b), std::max(a, b));
    if (r.signal == Signal::none) return r.value;
  }
}

void gen_fuzz(Ctx& c) {
  while (!c.full()) {
    switch (op_kind(c.op)) {
      case OpKind::arith:
      case OpKind::set_op: {
        std::vector<Interval> xs;
        for (int i = 0; i < op_arity(c.op); ++i)
          xs.push_back(random_interval(c, false, false, 260));
        c.interval_assert(xs, itl::AssertMode::tightest);
        break;
      }
      case OpKind::elem: {
        bool positive = c.op == Op::log || c.op == Op::log2 || c.op == Op::log10 ||
                        c.op == Op::pow;
        bool trig = c.op == Op::sin || c.op == Op::cos || c.op == Op::tan;
        std::vector<Interval> xs = {
            random_interval(c, true, positive, trig ? 48 : 120)};
        if (c.op == Op::pow)
          xs.push_back(c.around(c.uniform_int(-20, 20), c.uniform(0.0, 4.0)));
        c.interval_assert(xs, itl::AssertMode::accurate);
        break;
      }
      case OpKind::numeric:
        c.numeric_assert(random_interval(c, false, false, 300));
        break;
      case OpKind::boolean: {
        if (c.op == Op::is_member) {
          Interval x = random_interval(c, false, false, 60);
          double pt = c.rand_scaled(-64, 64);
          if ((c.rng() & 3) == 0 && !x.is_empty() && std::isfinite(x.lo()))
            pt = x.lo();
          c.member_assert(pt, x);
        } else {
          std::vector<Interval> xs = {random_interval(c, false, false, 60)};
          if (op_arity(c.op) == 2) {
            xs.push_back((c.rng() & 3) == 0 ? xs[0]
                                            : random_interval(c, false, false, 60));
          }
          c.bool_assert(xs);
        }
        break;
      }
      default:
        return;
    }
  }
}

// ---------------------------------------------------------------------------

bool applicable(std::string_view cat, Op op) {
  OpKind k = op_kind(op);
  if (cat == "easy") return true;
  if (cat == "signed-zero")
    return k == OpKind::arith || k == OpKind::set_op || k == OpKind::numeric ||
           k == OpKind::boolean;
  if (cat == "infinity") return k != OpKind::text;
  if (cat == "nan")
    return op == Op::text_to_interval || op == Op::is_member ||
           k == OpKind::numeric;
  if (cat == "overflow")
    return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div ||
           op == Op::sqr || op == Op::fma || op == Op::recip || op == Op::exp ||
           op == Op::pow;
  if (cat == "subnormal")
    return op == Op::add || op == Op::sub || op == Op::mul || op == Op::div ||
           op == Op::sqr || op == Op::sqrt || op == Op::recip || op == Op::exp ||
           op == Op::log || op == Op::log2 || op == Op::log10;
  if (cat == "binade") return k == OpKind::arith;
  if (cat == "trig-reduction")
    return op == Op::sin || op == Op::cos || op == Op::tan;
  if (cat == "io-forms") return op == Op::text_to_interval;
  if (cat == "decorations")
    return k == OpKind::arith || k == OpKind::elem || k == OpKind::set_op;
  if (cat == "fuzz")
    return k == OpKind::arith || k == OpKind::elem || k == OpKind::set_op ||
           k == OpKind::numeric || k == OpKind::boolean;
  return false;
}

void run_cell(Ctx& c) {
  if (c.category == "easy") gen_easy(c);
  else if (c.category == "signed-zero") gen_signed_zero(c);
  else if (c.category == "infinity") gen_infinity(c);
  else if (c.category == "nan") gen_nan(c);
  else if (c.category == "overflow") gen_overflow(c);
  else if (c.category == "subnormal") gen_subnormal(c);
  else if (c.category == "binade") gen_binade(c);
  else if (c.category == "trig-reduction") gen_trig(c);
  else if (c.category == "io-forms") gen_io(c);
  else if (c.category == "decorations") gen_decorations(c);
  else if (c.category == "fuzz") gen_fuzz(c);
}

// literal -> value conversion for self_validate
struct LitValue {
  bool ok = false;
  bool decorated = false;
  Interval iv;
};

LitValue interval_value(const itl::Literal& lit) {
  if (lit.kind == itl::Literal::Kind::interval) {
    IntervalResult r = text_to_interval(lit.text);
    if (r.signal != Signal::none) return {};
    return {true, false, r.value};
  }
  if (lit.kind != itl::Literal::Kind::decorated_interval) return {};
  std::string_view text = lit.text;
  size_t us = text.rfind("]_");
  if (us == std::string_view::npos) return {};  // [nai] has no bare part
  IntervalResult r = text_to_interval(text.substr(0, us + 1));
  if (r.signal != Signal::none) return {};
  return {true, true, r.value};
}

bool same_interval(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
  return a.lo() == b.lo() && a.hi() == b.hi();
}

}  // namespace

GenResult generate(const GenPlan& plan) {
  GenResult out;
  out.suite.name = "generated";

  std::vector<Op> ops;
  if (plan.ops.empty()) {
    for (int i = 0; i < kOpCount; ++i) ops.push_back(static_cast<Op>(i));
  } else {
    ops = plan.ops;
  }
  std::vector<std::string> cats;
  if (plan.categories.empty()) {
    for (const char* c : kCategories) cats.emplace_back(c);
  } else {
    for (const std::string& c : plan.categories) {
      bool known = false;
      for (const char* k : kCategories) known |= c == k;
      if (known)
        cats.push_back(c);
      else
        out.notes.push_back("unknown category '" + c + "' ignored");
    }
  }
  bool explicit_plan = !plan.ops.empty() && !plan.categories.empty();

  struct Pending {
    std::string name;
    std::vector<itl::Assertion> assertions;
    std::vector<std::string> prov;
  };
  std::vector<Pending> pending;

  for (const char* cat : kCategories) {
    if (std::find(cats.begin(), cats.end(), cat) == cats.end()) continue;
    for (int i = 0; i < kOpCount; ++i) {
      Op op = static_cast<Op>(i);
      if (std::find(ops.begin(), ops.end(), op) == ops.end()) continue;
      if (!applicable(cat, op)) {
        if (explicit_plan)
          out.notes.push_back("category '" + std::string(cat) +
                              "' does not apply to op '" +
                              std::string(op_name(op)) + "'");
        continue;
      }
      Ctx ctx{cat,
              op,
              plan.seed,
              plan.count,
              std::mt19937_64(plan.seed ^ fnv64(cat, fnv64(op_name(op)))),
              {},
              {},
              &out.dropped};
      run_cell(ctx);
      if (ctx.assertions.empty()) continue;
      pending.push_back({std::string(cat) + "." + std::string(op_name(op)),
                         std::move(ctx.assertions), std::move(ctx.prov)});
    }
  }

  std::sort(pending.begin(), pending.end(),
            [](const Pending& a, const Pending& b) { return a.name < b.name; });

  std::string prov = "# seed=" + std::to_string(plan.seed) +
                     " count=" + std::to_string(plan.count) + "\n";
  for (Pending& p : pending) {
    itl::TestCase tc;
    tc.name = p.name;
    tc.assertions = std::move(p.assertions);
    for (size_t i = 0; i < tc.assertions.size(); ++i) {
      size_t dot = p.name.find('.');
      prov += p.name + "#" + std::to_string(i) + " op=" + tc.assertions[i].op +
              " category=" + p.name.substr(0, dot) +
              " seed=" + std::to_string(plan.seed) + " " + p.prov[i] + "\n";
    }
    out.suite.testcases.push_back(std::move(tc));
  }
  for (const std::string& d : out.dropped) prov += d + "\n";
  out.provenance = std::move(prov);
  return out;
}

ValidationReport self_validate(const itl::TestSuite& suite) {
  ValidationReport report;
  for (const itl::TestCase& tc : suite.testcases) {
    for (size_t i = 0; i < tc.assertions.size(); ++i) {
      const itl::Assertion& a = tc.assertions[i];
      std::string tag = tc.name + "#" + std::to_string(i);
      std::optional<Op> opq = op_from_name(a.op);
      if (!opq || a.flavor != "set-based") {
        ++report.structural;
        continue;
      }
      OpKind k = op_kind(*opq);
      if (k != OpKind::arith && k != OpKind::elem && k != OpKind::set_op) {
        ++report.structural;
        continue;
      }
      if (a.expected.size() != 1) {
        ++report.structural;
        continue;
      }
      LitValue want = interval_value(a.expected[0]);
      if (!want.ok) {
        // NaI and other unparsable expectations are outside the
        // evaluator's reach; decoration logic is validated elsewhere.
        ++report.structural;
        continue;
      }
      std::vector<Interval> xs;
      bool inputs_ok = true;
      for (const itl::Literal& lit : a.inputs) {
        LitValue v = interval_value(lit);
        if (!v.ok) {
          inputs_ok = false;
          break;
        }
        xs.push_back(v.iv);
      }
      if (!inputs_ok || static_cast<int>(xs.size()) != op_arity(*opq)) {
        ++report.structural;
        continue;
      }
      ++report.checked;
      Derived d = derive_interval(*opq, xs);
      if (!d.ok) {
        ++report.unverifiable;
        report.unverifiable_list.push_back(
            tag + " op=" + a.op + " unverifiable q=" + std::to_string(d.q));
        continue;
      }
      if (same_interval(d.value, want.iv)) {
        ++report.confirmed;
      } else {
        ++report.mismatched;
        report.mismatches.push_back(
            tag + " op=" + a.op + " expected=" + a.expected[0].text +
            " derived=" + iv_lit(d.value).text);
      }
    }
  }
  return report;
}

FuzzReport fuzz_check(harness::Provider& provider, Op op, const Interval& x,
                      const std::optional<Interval>& y, int n, uint64_t seed) {
  FuzzReport report;
  OpKind k = op_kind(op);
  bool supported = (k == OpKind::arith || k == OpKind::elem) && op != Op::fma;
  if (!supported) {
    report.details.push_back("op '" + std::string(op_name(op)) +
                             "' is not point-fuzzable");
    return report;
  }
  int arity = op_arity(op);
  if (x.is_empty() || (arity == 2 && (!y || y->is_empty()))) {
    report.details.push_back("fuzz inputs must be nonempty");
    return report;
  }

  std::mt19937_64 rng(seed ^ fnv64(op_name(op)));

  auto ordered = [](double d) -> int64_t {
    int64_t i = std::bit_cast<int64_t>(d);
    return i >= 0 ? i : std::numeric_limits<int64_t>::min() - i;
  };
  auto unordered = [](int64_t o) -> double {
    int64_t i = o >= 0 ? o : std::numeric_limits<int64_t>::min() - o;
    return std::bit_cast<double>(i);
  };

  auto sample = [&](const Interval& v) {
    std::vector<double> pts;
    double lo = std::isinf(v.lo()) ? -fpk::kMaxReal : v.lo();
    double hi = std::isinf(v.hi()) ? fpk::kMaxReal : v.hi();
    pts.push_back(lo);
    if (hi != lo) pts.push_back(hi);
    if (lo <= 0.0 && hi >= 0.0) pts.push_back(0.0);
    double sub_lo = std::max(lo, fpk::kMinSubnormal);
    double sub_hi = std::min(hi, fpk::next_down(fpk::kMinNormal));
    if (sub_lo <= sub_hi)
      pts.push_back(std::clamp(0x1p-1060, sub_lo, sub_hi));
    std::uniform_int_distribution<int64_t> dist(ordered(lo), ordered(hi));
    while (static_cast<int>(pts.size()) < n) pts.push_back(unordered(dist(rng)));
    return pts;
  };

  auto host = [&](double a, double b) -> double {
    switch (op) {
      case Op::neg:   return -a;
      case Op::add:   return a + b;
      case Op::sub:   return a - b;
      case Op::mul:   return a * b;
      case Op::div:   return a / b;
      case Op::recip: return 1.0 / a;
      case Op::sqr:   return a * a;
      case Op::sqrt:  return std::sqrt(a);
      case Op::exp:   return std::exp(a);
      case Op::log:   return std::log(a);
      case Op::log2:  return std::log2(a);
      case Op::log10: return std::log10(a);
      case Op::sin:   return std::sin(a);
      case Op::cos:   return std::cos(a);
      case Op::tan:   return std::tan(a);
      case Op::atan:  return std::atan(a);
      case Op::pow:   return std::pow(a, b);
      default:        return std::numeric_limits<double>::quiet_NaN();
    }
  };

  Interval big;
  try {
    std::vector<Interval> args = {x};
    if (arity == 2) args.push_back(*y);
    big = provider.interval_op(op, args);
  } catch (const std::exception& e) {
    ++report.errors;
    report.details.push_back(std::string("provider crash on the full input: ") +
                             e.what());
    return report;
  }

  std::vector<double> px = sample(x);
  std::vector<double> py = arity == 2 ? sample(*y) : std::vector<double>{0.0};

  for (int i = 0; i < n; ++i) {
    double a = px[i % px.size()];
    double b = py[(arity == 2 ? i : 0) % py.size()];
    if (arity == 2 && i >= static_cast<int>(std::min(px.size(), py.size()))) {
      // decorrelate the two coordinates beyond the structured prefix
      b = py[rng() % py.size()];
    }
    ++report.points;

    double v = host(a, b);
    if (!std::isnan(v)) {
      bool inside = is_member(v, big) || is_member(fpk::next_up(v), big) ||
                    is_member(fpk::next_down(v), big);
      if (std::isinf(v))
        inside = (v > 0 ? big.hi() == kInf : big.lo() == -kInf) ||
                 is_member(v > 0 ? fpk::kMaxReal : -fpk::kMaxReal, big);
      if (!inside) {
        ++report.violations;
        report.details.push_back(
            "point image escapes the range: op=" + std::string(op_name(op)) +
            " point=(" + num_text(a) + (arity == 2 ? "," + num_text(b) : "") +
            ") host=" + num_text(v) + " range=" + interval_to_text(big));
        continue;
      }
    }

    try {
      std::vector<Interval> pargs = {iv(a, a)};
      if (arity == 2) pargs.push_back(iv(b, b));
      Interval point_img = provider.interval_op(op, pargs);
      if (!subset(point_img, big)) {
        ++report.violations;
        report.details.push_back(
            "point interval escapes the range: op=" + std::string(op_name(op)) +
            " point=(" + num_text(a) + (arity == 2 ? "," + num_text(b) : "") +
            ") image=" + interval_to_text(point_img) +
            " range=" + interval_to_text(big));
      }
    } catch (const std::exception& e) {
      ++report.errors;
      report.details.push_back(
          "provider crash: op=" + std::string(op_name(op)) + " point=(" +
          num_text(a) + (arity == 2 ? "," + num_text(b) : "") + "): " + e.what());
    }
  }
  return report;
}

}  // namespace itlconform::gen
