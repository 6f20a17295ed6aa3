#include "itlconform/decoration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "itlconform/fpkernel.hpp"

using namespace itlconform;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval I(double lo, double hi) { return Interval::unchecked(lo, hi); }

DecoratedInterval D(double lo, double hi, Decoration d) {
  return {I(lo, hi), d};
}

DecoratedInterval run1(Op op, DecoratedInterval x) {
  return dec_op(op, std::span(&x, 1));
}

DecoratedInterval run2(Op op, DecoratedInterval x, DecoratedInterval y) {
  const DecoratedInterval a[] = {x, y};
  return dec_op(op, a);
}

bool same(const DecoratedInterval& got, const Interval& want_iv,
          Decoration want_dec) {
  if (got.dec != want_dec) return false;
  if (got.interval.is_empty() || want_iv.is_empty())
    return got.interval.is_empty() && want_iv.is_empty();
  return got.interval.lo() == want_iv.lo() && got.interval.hi() == want_iv.hi();
}

constexpr Op kUnary[] = {Op::neg, Op::recip, Op::sqr,  Op::sqrt,
                         Op::exp, Op::log,   Op::log2, Op::log10,
                         Op::sin, Op::cos,   Op::tan,  Op::atan};
constexpr Op kBinary[] = {Op::add, Op::sub, Op::mul,
                          Op::div, Op::pow, Op::intersection,
                          Op::convex_hull};

// ---------------------------------------------------------------------------
// Independent reconstruction of the local decoration by sampling: dense grid
// membership in the mathematical domain, openness probed by nudging each
// coordinate, tangent poles located with the library-independent pi
// constant. This is a falsification harness for the emitted witnesses, not
// a general decision procedure.

bool point_in_domain(Op op, const std::vector<double>& p) {
  switch (op) {
    case Op::sqrt:  return p[0] >= 0.0;
    case Op::log:
    case Op::log2:
    case Op::log10: return p[0] > 0.0;
    case Op::recip: return p[0] != 0.0;
    case Op::div:   return p[1] != 0.0;
    case Op::pow:   return p[0] > 0.0 || (p[0] == 0.0 && p[1] > 0.0);
    default:        return true;
  }
}

bool tan_pole_inside(const Interval& x) {
  if (x.lo() == -kInf || x.hi() == kInf) return true;
  if (x.hi() - x.lo() > 4.0) return true;
  const long double hp = std::numbers::pi_v<long double> / 2.0L;
  const long long m_lo = static_cast<long long>(
      std::ceil(static_cast<long double>(x.lo()) / hp));
  const long long m_hi = static_cast<long long>(
      std::floor(static_cast<long double>(x.hi()) / hp));
  for (long long m = m_lo; m <= m_hi; ++m)
    if (m % 2 != 0) return true;
  return false;
}

std::vector<double> sample_axis(const Interval& x) {
  const double lo = x.lo() == -kInf ? -0x1p70 : x.lo();
  const double hi = x.hi() == kInf ? 0x1p70 : x.hi();
  std::vector<double> pts;
  for (int i = 0; i <= 32; ++i) {
    const double p = lo + (hi - lo) * (static_cast<double>(i) / 32.0);
    pts.push_back(std::min(std::max(p, lo), hi));
  }
  if (x.lo() <= 0.0 && 0.0 <= x.hi()) pts.push_back(0.0);
  return pts;
}

bool box_bounded(std::span<const Interval> xs) {
  for (const auto& x : xs)
    if (x.lo() == -kInf || x.hi() == kInf) return false;
  return true;
}

Decoration brute_local(Op op, std::span<const Interval> xs,
                       const Interval& result) {
  if (result.is_empty()) return Decoration::trv;
  for (const auto& x : xs)
    if (x.is_empty()) return Decoration::trv;
  if (op_kind(op) == OpKind::set_op) return Decoration::trv;

  std::vector<std::vector<double>> axes;
  for (const auto& x : xs) axes.push_back(sample_axis(x));

  bool inside = op != Op::tan || !tan_pole_inside(xs[0]);
  bool open = true;
  std::vector<double> p(xs.size());
  std::vector<std::size_t> idx(xs.size(), 0);
  for (;;) {
    for (std::size_t k = 0; k < xs.size(); ++k) p[k] = axes[k][idx[k]];
    if (!point_in_domain(op, p)) inside = false;
    for (std::size_t k = 0; k < xs.size() && open; ++k) {
      const double delta =
          std::max(std::fabs(p[k]) * 0x1p-30, fpk::kMinSubnormal);
      for (double nudged : {p[k] - delta, p[k] + delta}) {
        auto q = p;
        q[k] = nudged;
        if (!point_in_domain(op, q)) open = false;
      }
    }
    std::size_t k = 0;
    while (k < xs.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
    if (k == xs.size()) break;
  }
  if (!inside) return Decoration::trv;
  if (open && box_bounded(xs) && result.lo() != -kInf && result.hi() != kInf)
    return Decoration::com;
  return Decoration::dac;
}

}  // namespace

TEST_CASE("decoration order and names") {
  CHECK(Decoration::ill < Decoration::trv);
  CHECK(Decoration::trv < Decoration::def);
  CHECK(Decoration::def < Decoration::dac);
  CHECK(Decoration::dac < Decoration::com);
  CHECK(std::min(Decoration::dac, Decoration::trv) == Decoration::trv);
  for (Decoration d : {Decoration::ill, Decoration::trv, Decoration::def,
                       Decoration::dac, Decoration::com})
    CHECK(decoration_from_name(decoration_name(d)) == d);
  CHECK(!decoration_from_name("bogus").has_value());
}

TEST_CASE("fresh decorations and NaI") {
  CHECK(new_dec(I(1.0, 2.0)).dec == Decoration::com);
  CHECK(new_dec(Interval::entire()).dec == Decoration::dac);
  CHECK(new_dec(I(1.0, kInf)).dec == Decoration::dac);
  CHECK(new_dec(Interval::empty()).dec == Decoration::trv);

  CHECK(is_nai(nai()));
  CHECK(nai().interval.is_empty());
  CHECK(decorated_valid(nai()));
  CHECK(!decorated_valid({I(1.0, 2.0), Decoration::ill}));
  CHECK(!decorated_valid({Interval::entire(), Decoration::com}));
  CHECK(!decorated_valid({Interval::empty(), Decoration::def}));
  CHECK(decorated_valid({Interval::empty(), Decoration::trv}));
  CHECK(decorated_valid({I(1.0, kInf), Decoration::dac}));

  // Redecorating the bare part of a com value gives com again.
  const DecoratedInterval x = D(1.0, 2.0, Decoration::com);
  CHECK(new_dec(x.interval).dec == Decoration::com);
}

TEST_CASE("propagation on representative operations") {
  CHECK(same(run1(Op::sqrt, D(-1.0, 4.0, Decoration::com)), I(0.0, 2.0),
             Decoration::trv));
  CHECK(same(run1(Op::sqrt, D(1.0, 4.0, Decoration::com)), I(1.0, 2.0),
             Decoration::com));
  CHECK(same(run1(Op::sqrt, D(0.0, 4.0, Decoration::com)), I(0.0, 2.0),
             Decoration::dac));
  CHECK(same(run1(Op::sqrt, D(1.0, 4.0, Decoration::def)), I(1.0, 2.0),
             Decoration::def));

  CHECK(same(run2(Op::add, D(1.0, 2.0, Decoration::com),
                  D(3.0, 4.0, Decoration::com)),
             I(4.0, 6.0), Decoration::com));
  CHECK(same(run2(Op::add, D(1.0, 2.0, Decoration::com),
                  D(3.0, 4.0, Decoration::trv)),
             I(4.0, 6.0), Decoration::trv));
  CHECK(run2(Op::add, D(0x1p1023, 0x1p1023, Decoration::com),
             D(0x1p1023, 0x1p1023, Decoration::com))
            .dec == Decoration::dac);

  CHECK(same(run2(Op::div, D(1.0, 2.0, Decoration::com),
                  D(0.0, 1.0, Decoration::com)),
             I(1.0, kInf), Decoration::trv));
  CHECK(same(run2(Op::div, D(1.0, 2.0, Decoration::com),
                  D(1.0, 2.0, Decoration::com)),
             I(0.5, 2.0), Decoration::com));

  CHECK(run1(Op::log, D(0.0, 1.0, Decoration::com)).dec == Decoration::trv);
  CHECK(run1(Op::log, D(1.0, 2.0, Decoration::com)).dec == Decoration::com);
  CHECK(run1(Op::tan, D(1.0, 2.0, Decoration::com)).dec == Decoration::trv);
  CHECK(run1(Op::tan, D(0.25, 0.75, Decoration::com)).dec == Decoration::com);
  CHECK(run1(Op::exp, D(710.0, 711.0, Decoration::com)).dec ==
        Decoration::dac);
  CHECK(run1(Op::exp, D(0.0, 1.0, Decoration::dac)).dec == Decoration::dac);

  CHECK(run2(Op::pow, D(0.0, 1.0, Decoration::com),
             D(1.0, 2.0, Decoration::com))
            .dec == Decoration::dac);
  CHECK(run2(Op::pow, D(1.0, 2.0, Decoration::com),
             D(1.0, 2.0, Decoration::com))
            .dec == Decoration::com);
  CHECK(run2(Op::pow, D(-1.0, 1.0, Decoration::com),
             D(1.0, 2.0, Decoration::com))
            .dec == Decoration::trv);

  // Set operations contribute trv.
  CHECK(run2(Op::intersection, D(1.0, 3.0, Decoration::com),
             D(2.0, 4.0, Decoration::com))
            .dec == Decoration::trv);

  // Ternary propagation.
  const DecoratedInterval f[] = {D(1.0, 2.0, Decoration::com),
                                 D(3.0, 4.0, Decoration::com),
                                 D(5.0, 6.0, Decoration::dac)};
  const auto r = dec_op(Op::fma, f);
  CHECK(same(r, I(8.0, 14.0), Decoration::dac));

  // Empty operands stay trv.
  CHECK(run2(Op::add, {Interval::empty(), Decoration::trv},
             D(1.0, 2.0, Decoration::com))
            .dec == Decoration::trv);
}

TEST_CASE("NaI absorbs through every operation") {
  for (Op op : kUnary) CHECK(is_nai(run1(op, nai())));
  for (Op op : kBinary) {
    CHECK(is_nai(run2(op, nai(), D(1.0, 2.0, Decoration::com))));
    CHECK(is_nai(run2(op, D(1.0, 2.0, Decoration::com), nai())));
  }
  const DecoratedInterval f[] = {D(1.0, 2.0, Decoration::com), nai(),
                                 D(1.0, 2.0, Decoration::com)};
  CHECK(is_nai(dec_op(Op::fma, f)));
}

TEST_CASE("propagation never raises and keeps outputs valid") {
  std::mt19937_64 rng(53);
  const auto random_endpoint = [&rng]() -> double {
    switch (rng() & 7) {
      case 0: return 0.0;
      case 1: return -kInf;
      case 2: return kInf;
      default: {
        const int e = -40 + static_cast<int>(rng() % 81);
        const double m =
            1.0 + static_cast<double>(rng() % 4096) / 4096.0;
        return (rng() & 1 ? -1.0 : 1.0) * std::ldexp(m, e);
      }
    }
  };
  const auto random_decorated = [&]() -> DecoratedInterval {
    if ((rng() & 15) == 0) return nai();
    if ((rng() & 15) == 1) return {Interval::empty(), Decoration::trv};
    double a = random_endpoint();
    double b = random_endpoint();
    if (a > b) std::swap(a, b);
    if (a == kInf) a = 0.0;
    if (b == -kInf) b = 1.0;
    const Interval iv = Interval::unchecked(a, b);
    for (;;) {
      const Decoration d =
          static_cast<Decoration>(1 + static_cast<int>(rng() % 4));
      if (decorated_valid({iv, d})) return {iv, d};
    }
  };

  constexpr Op all_ops[] = {Op::neg, Op::add,  Op::sub,   Op::mul,
                            Op::div, Op::recip, Op::sqr,  Op::sqrt,
                            Op::fma, Op::exp,  Op::log,   Op::log2,
                            Op::log10, Op::sin, Op::cos,  Op::tan,
                            Op::atan, Op::pow, Op::intersection,
                            Op::convex_hull};
  for (Op op : all_ops) {
    for (int it = 0; it < 400; ++it) {
      std::vector<DecoratedInterval> xs;
      bool any_ill = false;
      Decoration cap = Decoration::com;
      for (int k = 0; k < op_arity(op); ++k) {
        xs.push_back(random_decorated());
        any_ill = any_ill || is_nai(xs.back());
        cap = std::min(cap, xs.back().dec);
      }
      const DecoratedInterval got = dec_op(op, xs);
      CHECK(decorated_valid(got));
      CHECK(got.dec <= cap);
      if (any_ill) {
        CHECK(is_nai(got));
      } else {
        CHECK(!is_nai(got));
        // The bare part matches the undecorated evaluation.
        std::vector<Interval> bare;
        for (const auto& x : xs) bare.push_back(x.interval);
        const Interval plain = eval_interval_op(op, bare);
        CHECK(got.interval.is_empty() == plain.is_empty());
        if (!plain.is_empty()) {
          CHECK(got.interval.lo() == plain.lo());
          CHECK(got.interval.hi() == plain.hi());
        }
      }
    }
  }
}

TEST_CASE("transition tables") {
  const auto find = [](const std::vector<DecCase>& cases, Decoration in0,
                       Decoration out,
                       Decoration in1 = Decoration::ill) -> const DecCase& {
    for (const auto& c : cases)
      if (c.in[0] == in0 && c.out == out &&
          (in1 == Decoration::ill || c.in[1] == in1))
        return c;
    REQUIRE(false);
    return cases.front();
  };

  const auto neg_cases = enumerate_dec_cases(Op::neg, 1);
  CHECK(neg_cases.size() == 25);
  CHECK(find(neg_cases, Decoration::com, Decoration::com).reachable);
  CHECK(!find(neg_cases, Decoration::com, Decoration::trv).reachable);
  CHECK(!find(neg_cases, Decoration::com, Decoration::dac).reachable);
  CHECK(!find(neg_cases, Decoration::com, Decoration::ill).reachable);
  CHECK(find(neg_cases, Decoration::dac, Decoration::dac).reachable);
  CHECK(!find(neg_cases, Decoration::dac, Decoration::com).reachable);
  CHECK(find(neg_cases, Decoration::ill, Decoration::ill).reachable);

  const auto sqrt_cases = enumerate_dec_cases(Op::sqrt, 1);
  const auto& com_trv = find(sqrt_cases, Decoration::com, Decoration::trv);
  CHECK(com_trv.reachable);
  CHECK(com_trv.inputs.size() == 1);
  CHECK(com_trv.inputs[0].interval.lo() < 0.0);
  CHECK(find(sqrt_cases, Decoration::com, Decoration::dac).reachable);
  CHECK(find(sqrt_cases, Decoration::com, Decoration::com).reachable);

  const auto add_cases = enumerate_dec_cases(Op::add, 2);
  CHECK(add_cases.size() == 125);
  CHECK(find(add_cases, Decoration::com, Decoration::com, Decoration::com)
            .reachable);
  CHECK(find(add_cases, Decoration::com, Decoration::dac, Decoration::com)
            .reachable);
  CHECK(!find(add_cases, Decoration::com, Decoration::trv, Decoration::com)
             .reachable);
  CHECK(!find(add_cases, Decoration::com, Decoration::def, Decoration::com)
             .reachable);
  CHECK(find(add_cases, Decoration::def, Decoration::def, Decoration::com)
            .reachable);
  CHECK(find(add_cases, Decoration::trv, Decoration::trv, Decoration::dac)
            .reachable);
  CHECK(!find(add_cases, Decoration::trv, Decoration::com, Decoration::com)
             .reachable);

  const auto div_cases = enumerate_dec_cases(Op::div, 2);
  CHECK(find(div_cases, Decoration::com, Decoration::trv, Decoration::com)
            .reachable);
}

TEST_CASE("every witness is internally consistent and matches sampling") {
  for (Op op : kUnary) {
    for (const auto& c : enumerate_dec_cases(op, 1)) {
      if (!c.reachable) {
        CHECK(c.inputs.empty());
        continue;
      }
      REQUIRE(c.inputs.size() == 1);
      CHECK(decorated_valid(c.inputs[0]));
      CHECK(c.inputs[0].dec == c.in[0]);
      const auto again = dec_op(op, c.inputs);
      CHECK(again.dec == c.out);
      CHECK(decorated_valid(c.result));
      if (is_nai(c.inputs[0])) continue;
      const Interval bare[] = {c.inputs[0].interval};
      CHECK(local_dec(op, bare, c.result.interval) ==
            brute_local(op, bare, c.result.interval));
    }
  }
  for (Op op : kBinary) {
    for (const auto& c : enumerate_dec_cases(op, 2)) {
      if (!c.reachable) {
        CHECK(c.inputs.empty());
        continue;
      }
      REQUIRE(c.inputs.size() == 2);
      CHECK(decorated_valid(c.inputs[0]));
      CHECK(decorated_valid(c.inputs[1]));
      CHECK(c.inputs[0].dec == c.in[0]);
      CHECK(c.inputs[1].dec == c.in[1]);
      const auto again = dec_op(op, c.inputs);
      CHECK(again.dec == c.out);
      if (is_nai(c.inputs[0]) || is_nai(c.inputs[1])) continue;
      const Interval bare[] = {c.inputs[0].interval, c.inputs[1].interval};
      CHECK(local_dec(op, bare, c.result.interval) ==
            brute_local(op, bare, c.result.interval));
    }
  }
}
