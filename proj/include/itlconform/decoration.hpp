#pragma once
// Decorated intervals for set-based semantics: a five-element decoration
// lattice recording computation history, NaI, per-operation decoration
// propagation, and systematic enumeration of decoration transitions.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "itlconform/interval.hpp"
#include "itlconform/ops.hpp"

namespace itlconform {

// Total order ill < trv < def < dac < com; min over this order is the
// propagation rule.
enum class Decoration : uint8_t {
  ill = 0,
  trv = 1,
  def = 2,
  dac = 3,
  com = 4,
};

std::string_view decoration_name(Decoration d);
std::optional<Decoration> decoration_from_name(std::string_view name);

// Invariants:
//   dec == ill  ⟺ the value is NaI (interval Empty);
//   dec == com  ⟹ interval nonempty and bounded;
//   dec >= def  ⟹ interval nonempty.
struct DecoratedInterval {
  Interval interval;
  Decoration dec = Decoration::trv;
};

DecoratedInterval nai();
bool is_nai(const DecoratedInterval& x);
bool decorated_valid(const DecoratedInterval& x);

// Fresh decoration of a bare interval: bounded nonempty -> com, unbounded
// nonempty -> dac, empty -> trv.
DecoratedInterval new_dec(const Interval& x);

// Decoration contributed by one application of `op` to the bare input box,
// given the bare result: com when the box is bounded, lies in the interior
// of the domain and the result is bounded; dac when the box is contained in
// the domain (every operation here is continuous on its whole domain, so a
// bare def never arises locally); trv otherwise. Set operations and any
// empty input or result yield trv.
Decoration local_dec(Op op, std::span<const Interval> bare,
                     const Interval& result);

// Propagated operation: any ill input absorbs to NaI; otherwise the bare
// part is the interval-core result and the decoration is the minimum of the
// input decorations and the local decoration.
DecoratedInterval dec_op(Op op, std::span<const DecoratedInterval> xs);

// One decoration transition (input decoration tuple -> output decoration)
// with a witness when the transition is achievable.
struct DecCase {
  std::array<Decoration, 2> in{};  // first `arity` entries are significant
  Decoration out = Decoration::trv;
  bool reachable = false;
  std::vector<DecoratedInterval> inputs;  // empty unless reachable
  DecoratedInterval result;
};

// Full transition table for a unary or binary operation: 5^(arity+1)
// entries (25 or 125), each either carrying a found witness or marked
// unreachable.
std::vector<DecCase> enumerate_dec_cases(Op op, int arity);

}  // namespace itlconform
