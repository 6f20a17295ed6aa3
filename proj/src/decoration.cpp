#include "itlconform/decoration.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "itlconform/oracle.hpp"

namespace itlconform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool bounded(const Interval& x) {
  return !x.is_empty() && x.lo() != -kInf && x.hi() != kInf;
}

bool contains_pole(const Interval& x) {
  if (x.lo() == -kInf || x.hi() == kInf) return true;
  return oracle::trig_points(x.lo(), x.hi()).pole;
}

struct DomainStatus {
  bool inside = true;    // input box contained in the domain
  bool interior = true;  // contained in the topological interior
};

DomainStatus domain_status(Op op, std::span<const Interval> xs) {
  switch (op) {
    case Op::sqrt:
      return {xs[0].lo() >= 0.0, xs[0].lo() > 0.0};
    case Op::log:
    case Op::log2:
    case Op::log10: {
      const bool in = xs[0].lo() > 0.0;
      return {in, in};
    }
    case Op::recip: {
      const bool in = xs[0].lo() > 0.0 || xs[0].hi() < 0.0;
      return {in, in};
    }
    case Op::div: {
      const bool in = xs[1].lo() > 0.0 || xs[1].hi() < 0.0;
      return {in, in};
    }
    case Op::tan: {
      const bool in = !contains_pole(xs[0]);
      return {in, in};
    }
    case Op::pow: {
      const bool in = xs[0].lo() > 0.0 ||
                      (xs[0].lo() == 0.0 && xs[1].lo() > 0.0);
      return {in, xs[0].lo() > 0.0};
    }
    default:
      return {true, true};
  }
}

}  // namespace

std::string_view decoration_name(Decoration d) {
  switch (d) {
    case Decoration::ill: return "ill";
    case Decoration::trv: return "trv";
    case Decoration::def: return "def";
    case Decoration::dac: return "dac";
    case Decoration::com: return "com";
  }
  return "trv";
}

std::optional<Decoration> decoration_from_name(std::string_view name) {
  if (name == "ill") return Decoration::ill;
  if (name == "trv") return Decoration::trv;
  if (name == "def") return Decoration::def;
  if (name == "dac") return Decoration::dac;
  if (name == "com") return Decoration::com;
  return std::nullopt;
}

DecoratedInterval nai() { return {Interval::empty(), Decoration::ill}; }

bool is_nai(const DecoratedInterval& x) { return x.dec == Decoration::ill; }

bool decorated_valid(const DecoratedInterval& x) {
  switch (x.dec) {
    case Decoration::ill: return x.interval.is_empty();
    case Decoration::com: return bounded(x.interval);
    case Decoration::dac:
    case Decoration::def: return !x.interval.is_empty();
    case Decoration::trv: return true;
  }
  return false;
}

DecoratedInterval new_dec(const Interval& x) {
  if (x.is_empty()) return {x, Decoration::trv};
  return {x, bounded(x) ? Decoration::com : Decoration::dac};
}

Decoration local_dec(Op op, std::span<const Interval> bare,
                     const Interval& result) {
  if (result.is_empty()) return Decoration::trv;
  for (const auto& x : bare)
    if (x.is_empty()) return Decoration::trv;
  if (op_kind(op) == OpKind::set_op) return Decoration::trv;
  const DomainStatus ds = domain_status(op, bare);
  if (!ds.inside) return Decoration::trv;
  bool box_bounded = true;
  for (const auto& x : bare) box_bounded = box_bounded && bounded(x);
  if (ds.interior && box_bounded && bounded(result)) return Decoration::com;
  return Decoration::dac;
}

DecoratedInterval dec_op(Op op, std::span<const DecoratedInterval> xs) {
  assert(static_cast<int>(xs.size()) == op_arity(op));
  std::vector<Interval> bare;
  Decoration d = Decoration::com;
  for (const auto& x : xs) {
    assert(decorated_valid(x));
    if (is_nai(x)) return nai();
    bare.push_back(x.interval);
    d = std::min(d, x.dec);
  }
  const Interval result = eval_interval_op(op, bare);
  d = std::min(d, local_dec(op, bare, result));
  const DecoratedInterval r{result, d};
  assert(decorated_valid(r));
  return r;
}

namespace {

// Bare building blocks for transition witnesses, chosen to cover domain
// interiors, boundaries, violations, unboundedness and overflow.
const std::vector<Interval>& witness_pool() {
  static const std::vector<Interval> pool = [] {
    std::vector<Interval> p;
    p.push_back(Interval::empty());
    p.push_back(Interval::entire());
    p.push_back(Interval::unchecked(0.0, 0.0));
    p.push_back(Interval::unchecked(1.0, 2.0));
    p.push_back(Interval::unchecked(2.0, 3.0));
    p.push_back(Interval::unchecked(0.25, 0.75));
    p.push_back(Interval::unchecked(-1.0, 4.0));
    p.push_back(Interval::unchecked(-4.0, -1.0));
    p.push_back(Interval::unchecked(0.0, 4.0));
    p.push_back(Interval::unchecked(-1.0, 0.0));
    p.push_back(Interval::unchecked(1.0, kInf));
    p.push_back(Interval::unchecked(-kInf, -1.0));
    p.push_back(Interval::unchecked(0x1p1000, 0x1p1023));
    p.push_back(Interval::unchecked(710.0, 711.0));
    return p;
  }();
  return pool;
}

// Decorations that may legally dress a given bare interval.
bool assignable(const Interval& x, Decoration d) {
  return decorated_valid({x, d});
}

constexpr Decoration kAllDecs[] = {Decoration::ill, Decoration::trv,
                                   Decoration::def, Decoration::dac,
                                   Decoration::com};

}  // namespace

std::vector<DecCase> enumerate_dec_cases(Op op, int arity) {
  assert(arity == op_arity(op));
  assert(arity == 1 || arity == 2);
  const auto& pool = witness_pool();

  // Bare tuples with precomputed results keep the transition search cheap.
  struct Tuple {
    std::array<Interval, 2> xs;
    Interval result;
    Decoration local;
  };
  std::vector<Tuple> tuples;
  const std::size_t n = pool.size();
  const std::size_t count = arity == 1 ? n : n * n;
  for (std::size_t i = 0; i < count; ++i) {
    Tuple t;
    t.xs[0] = pool[i % n];
    if (arity == 2) t.xs[1] = pool[i / n];
    const std::span<const Interval> bare(t.xs.data(),
                                         static_cast<std::size_t>(arity));
    t.result = eval_interval_op(op, bare);
    t.local = local_dec(op, bare, t.result);
    tuples.push_back(t);
  }

  std::vector<DecCase> cases;
  const int in_combos = arity == 1 ? 5 : 25;
  for (int combo = 0; combo < in_combos; ++combo) {
    std::array<Decoration, 2> in{};
    in[0] = kAllDecs[combo % 5];
    if (arity == 2) in[1] = kAllDecs[combo / 5];
    const bool any_ill =
        in[0] == Decoration::ill ||
        (arity == 2 && in[1] == Decoration::ill);
    for (Decoration want : kAllDecs) {
      DecCase c;
      c.in = in;
      c.out = want;
      if (any_ill) {
        // NaI absorbs: the only achievable output is ill, witnessed by NaI
        // in the ill slots and anything valid elsewhere.
        if (want == Decoration::ill) {
          c.reachable = true;
          for (int k = 0; k < arity; ++k) {
            const Decoration dk = in[static_cast<std::size_t>(k)];
            c.inputs.push_back(dk == Decoration::ill
                                   ? nai()
                                   : DecoratedInterval{pool[3], dk});
          }
          c.result = dec_op(op, c.inputs);
        }
        cases.push_back(std::move(c));
        continue;
      }
      if (want == Decoration::ill) {
        // Unreachable: ill is never created, only propagated.
        cases.push_back(std::move(c));
        continue;
      }
      const Decoration cap = arity == 1 ? in[0] : std::min(in[0], in[1]);
      for (const Tuple& t : tuples) {
        bool valid = true;
        for (int k = 0; k < arity; ++k)
          valid = valid &&
                  assignable(t.xs[static_cast<std::size_t>(k)],
                             in[static_cast<std::size_t>(k)]);
        if (!valid) continue;
        if (std::min(cap, t.local) != want) continue;
        c.reachable = true;
        for (int k = 0; k < arity; ++k)
          c.inputs.push_back({t.xs[static_cast<std::size_t>(k)],
                              in[static_cast<std::size_t>(k)]});
        c.result = dec_op(op, c.inputs);
        assert(c.result.dec == want);
        break;
      }
      cases.push_back(std::move(c));
    }
  }
  assert(static_cast<int>(cases.size()) == (arity == 1 ? 25 : 125));
  return cases;
}

}  // namespace itlconform
